#include <ifsnet/ifsnet.h>

#include <ifsnet/artifacts.hpp>
#include <ifsnet/cooccur.hpp>
#include <ifsnet/ifs.hpp>
#include <ifsnet/ingest.hpp>
#include <ifsnet/metrics.hpp>
#include <ifsnet/orient.hpp>
#include <ifsnet/pagerank.hpp>
#include <ifsnet/synth.hpp>
#include <ifsnet/tiedecay.hpp>

#include <algorithm>
#include <fstream>
#include <new>
#include <optional>
#include <set>
#include <sstream>
#include <string>

using namespace ifsnet;

struct ifs_event_log {
    EventLog log;
};

struct ifs_tie_graph {
    DirectedTieGraph graph;
};

struct ifs_snapshot {
    std::optional<NetworkSnapshot> owned;
    const NetworkSnapshot* view = nullptr;

    const NetworkSnapshot& get() const { return owned ? *owned : *view; }
};

struct ifs_pagerank {
    PageRankVector pr;
    std::vector<NodeIndex> order;
};

struct ifs_assignment {
    CommunityAssignment assignment;
    std::size_t rounds = 0;
};

struct ifs_category_map {
    CategoryMap map;
};

namespace {

thread_local std::string g_last_error;

template <typename F>
ifs_status guarded(F&& body) noexcept {
    try {
        body();
        g_last_error.clear();
        return IFS_OK;
    } catch (const ParseError& e) {
        g_last_error = e.what();
        return IFS_E_PARSE;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return IFS_E_IO;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return IFS_E_INVALID_ARGUMENT;
    } catch (const std::domain_error& e) {
        g_last_error = e.what();
        return IFS_E_DOMAIN;
    } catch (const std::bad_alloc&) {
        g_last_error = "out of memory";
        return IFS_E_INTERNAL;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return IFS_E_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return IFS_E_INTERNAL;
    }
}

template <typename T>
const T& require(const T* handle, const char* what) {
    if (!handle)
        throw std::invalid_argument(std::string("null ") + what);
    return *handle;
}

template <typename T>
void require_out(T** out) {
    if (!out)
        throw std::invalid_argument("null output pointer");
}

std::ofstream open_out(const char* path) {
    if (!path)
        throw std::invalid_argument("null path");
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw IoError(std::string("cannot write '") + path + "'");
    return out;
}

std::ifstream open_in(const char* path) {
    if (!path)
        throw std::invalid_argument("null path");
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError(std::string("cannot read '") + path + "'");
    return in;
}

void finish(std::ofstream& out, const char* path) {
    out.flush();
    if (!out)
        throw IoError(std::string("write failed for '") + path + "'");
}

Parameters parse_params(const char* text) {
    Parameters params;
    if (!text)
        return params;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            params.emplace_back(line, "");
        else
            params.emplace_back(line.substr(0, eq), line.substr(eq + 1));
    }
    return params;
}

FlowParams to_flow(const ifs_flow_params* p) {
    FlowParams f;
    if (p) {
        f.beta = p->beta;
        f.seed = p->seed;
        f.max_rounds = p->max_rounds;
        f.relay = p->single_hop ? Relay::single_hop : Relay::multi_hop;
        f.stop = p->stop_on_quiet_round ? StopRule::quiet_round : StopRule::exhausted;
    }
    return f;
}

} // namespace

extern "C" {

const char* ifs_version(void) { return "0.1.0"; }

const char* ifs_status_string(ifs_status status) {
    switch (status) {
    case IFS_OK: return "ok";
    case IFS_E_INVALID_ARGUMENT: return "invalid argument";
    case IFS_E_PARSE: return "parse error";
    case IFS_E_IO: return "i/o error";
    case IFS_E_DOMAIN: return "domain error";
    case IFS_E_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* ifs_last_error(void) { return g_last_error.c_str(); }

// ---- event logs

ifs_status ifs_event_log_read_csv(const char* path, ifs_event_log** out) {
    return guarded([&] {
        require_out(out);
        auto in = open_in(path);
        *out = new ifs_event_log{parse_events(in)};
    });
}

ifs_status ifs_event_log_parse_csv(const char* data, size_t size, ifs_event_log** out) {
    return guarded([&] {
        require_out(out);
        if (!data && size)
            throw std::invalid_argument("null data");
        std::istringstream in(std::string(data ? data : "", size));
        *out = new ifs_event_log{parse_events(in)};
    });
}

ifs_status ifs_event_log_write_csv(const ifs_event_log* log, const char* path) {
    return guarded([&] {
        const auto& l = require(log, "event log");
        auto out = open_out(path);
        serialize_events(l.log, out);
        finish(out, path);
    });
}

ifs_status ifs_event_log_filter(const ifs_event_log* log, const char* const* locations, size_t count,
                                ifs_event_log** out) {
    return guarded([&] {
        const auto& l = require(log, "event log");
        require_out(out);
        std::set<std::string> keep;
        for (size_t i = 0; i < count; ++i) {
            if (!locations || !locations[i])
                throw std::invalid_argument("null location id");
            keep.emplace(locations[i]);
        }
        *out = new ifs_event_log{filter_events(l.log, keep)};
    });
}

size_t ifs_event_log_record_count(const ifs_event_log* log) { return log ? log->log.size() : 0; }
size_t ifs_event_log_student_count(const ifs_event_log* log) { return log ? log->log.students().size() : 0; }
size_t ifs_event_log_location_count(const ifs_event_log* log) { return log ? log->log.locations().size() : 0; }

void ifs_event_log_time_range(const ifs_event_log* log, int64_t* first, int64_t* last) {
    const auto span = log ? log->log.time_span() : TimeSpan{};
    if (first)
        *first = span.begin;
    if (last)
        *last = span.end;
}

void ifs_event_log_free(ifs_event_log* log) { delete log; }

// ---- tie graphs

ifs_status ifs_tie_graph_build(const ifs_event_log* log, int64_t window, ifs_tie_graph** out) {
    return guarded([&] {
        const auto& l = require(log, "event log");
        require_out(out);
        const auto cooccur = build_cooccurrence_graph(l.log, window);
        *out = new ifs_tie_graph{orient_edges(cooccur, window)};
    });
}

ifs_status ifs_tie_graph_read(const char* path, ifs_tie_graph** out) {
    return guarded([&] {
        require_out(out);
        auto in = open_in(path);
        *out = new ifs_tie_graph{read_tie_graph(in)};
    });
}

ifs_status ifs_tie_graph_write(const ifs_tie_graph* graph, const char* path, const char* params) {
    return guarded([&] {
        const auto& g = require(graph, "tie graph");
        auto out = open_out(path);
        write_tie_graph(g.graph, out, parse_params(params));
        finish(out, path);
    });
}

ifs_status ifs_tie_graph_write_cooccurrence_tsv(const ifs_tie_graph* graph, const char* path, const char* params) {
    return guarded([&] {
        const auto& g = require(graph, "tie graph");
        auto out = open_out(path);
        write_parameter_header(parse_params(params), out);
        write_cooccurrence_tsv(collapse(g.graph), out);
        finish(out, path);
    });
}

ifs_status ifs_tie_graph_write_directed_tsv(const ifs_tie_graph* graph, const char* path, const char* params) {
    return guarded([&] {
        const auto& g = require(graph, "tie graph");
        auto out = open_out(path);
        write_parameter_header(parse_params(params), out);
        write_directed_tsv(g.graph, out);
        finish(out, path);
    });
}

size_t ifs_tie_graph_node_count(const ifs_tie_graph* graph) { return graph ? graph->graph.node_count() : 0; }
size_t ifs_tie_graph_undirected_edge_count(const ifs_tie_graph* graph) {
    return graph ? graph->graph.ties().size() : 0;
}
size_t ifs_tie_graph_directed_edge_count(const ifs_tie_graph* graph) { return graph ? graph->graph.edge_count() : 0; }

void ifs_tie_graph_time_range(const ifs_tie_graph* graph, int64_t* first, int64_t* last) {
    const auto span = graph ? graph->graph.observed() : TimeSpan{};
    if (first)
        *first = span.begin;
    if (last)
        *last = span.end;
}

int64_t ifs_tie_graph_window(const ifs_tie_graph* graph) { return graph ? graph->graph.window() : 0; }

void ifs_tie_graph_free(ifs_tie_graph* graph) { delete graph; }

// ---- tie decay

double ifs_alpha_from_half_life(double half_life_seconds) {
    return half_life_seconds > 0 ? DecayParams::from_half_life(half_life_seconds).alpha() : 0.0;
}

double ifs_default_half_life(void) { return kDefaultHalfLife; }

ifs_status ifs_edge_weight_at(const int64_t* times, size_t count, double alpha, double t, double* out) {
    return guarded([&] {
        if (!out || (!times && count))
            throw std::invalid_argument("null pointer");
        const std::span<const Timestamp> span(times, count);
        if (!std::is_sorted(span.begin(), span.end()))
            throw std::invalid_argument("co-occurrence times must be sorted");
        *out = edge_weight_at(span, DecayParams::from_alpha(alpha), t);
    });
}

ifs_status ifs_snapshot_at(const ifs_tie_graph* graph, double alpha, double t, ifs_snapshot** out) {
    return guarded([&] {
        const auto& g = require(graph, "tie graph");
        require_out(out);
        auto* s = new ifs_snapshot;
        s->owned.emplace(snapshot_at(g.graph, DecayParams::from_alpha(alpha), t));
        *out = s;
    });
}

ifs_status ifs_snapshot_write_tsv(const ifs_snapshot* snapshot, double alpha, const char* path, const char* params) {
    return guarded([&] {
        const auto& s = require(snapshot, "snapshot");
        auto out = open_out(path);
        write_parameter_header(parse_params(params), out);
        write_snapshot_tsv(s.get(), DecayParams::from_alpha(alpha), out);
        finish(out, path);
    });
}

double ifs_snapshot_time(const ifs_snapshot* snapshot) { return snapshot ? snapshot->get().time() : 0.0; }
size_t ifs_snapshot_node_count(const ifs_snapshot* snapshot) { return snapshot ? snapshot->get().node_count() : 0; }
size_t ifs_snapshot_edge_count(const ifs_snapshot* snapshot) { return snapshot ? snapshot->get().edge_count() : 0; }
double ifs_snapshot_total_weight(const ifs_snapshot* snapshot) {
    return snapshot ? snapshot->get().total_weight() : 0.0;
}

void ifs_snapshot_free(ifs_snapshot* snapshot) { delete snapshot; }

namespace {
struct StopSampling {};
} // namespace

ifs_status ifs_sample_snapshots(const ifs_tie_graph* graph, double alpha, double t_start, double t_end,
                                size_t n_points, ifs_snapshot_visitor visit, void* user) {
    return guarded([&] {
        const auto& g = require(graph, "tie graph");
        if (!visit)
            throw std::invalid_argument("null visitor");
        try {
            for_each_snapshot(g.graph, DecayParams::from_alpha(alpha), t_start, t_end, n_points,
                              [&](std::size_t i, const NetworkSnapshot& s) {
                                  ifs_snapshot view;
                                  view.view = &s;
                                  if (visit(user, i, &view))
                                      throw StopSampling{};
                              });
        } catch (const StopSampling&) {
        }
    });
}

// ---- PageRank

ifs_walk_params ifs_walk_params_default(void) {
    const WalkParams w;
    return {w.damping, w.tolerance, w.max_iterations};
}

ifs_status ifs_pagerank_compute(const ifs_snapshot* snapshot, const ifs_walk_params* params, ifs_pagerank** out) {
    return guarded([&] {
        const auto& s = require(snapshot, "snapshot");
        require_out(out);
        WalkParams w;
        if (params) {
            w.damping = params->damping;
            w.tolerance = params->tolerance;
            w.max_iterations = params->max_iterations;
        }
        auto pr = pagerank(s.get(), w);
        auto order = rank_nodes(pr);
        *out = new ifs_pagerank{std::move(pr), std::move(order)};
    });
}

int ifs_pagerank_converged(const ifs_pagerank* pr) { return pr && pr->pr.converged ? 1 : 0; }
size_t ifs_pagerank_iterations(const ifs_pagerank* pr) { return pr ? pr->pr.iterations : 0; }
double ifs_pagerank_residual(const ifs_pagerank* pr) { return pr ? pr->pr.residual : 0.0; }
size_t ifs_pagerank_size(const ifs_pagerank* pr) { return pr ? pr->pr.size() : 0; }

double ifs_pagerank_score(const ifs_pagerank* pr, size_t index) {
    return pr && index < pr->pr.size() ? pr->pr.scores[index] : 0.0;
}

const char* ifs_pagerank_node_at_rank(const ifs_pagerank* pr, size_t rank) {
    if (!pr || rank >= pr->order.size())
        return nullptr;
    return (*pr->pr.nodes)[pr->order[rank]].c_str();
}

ifs_status ifs_pagerank_write_tsv(const ifs_pagerank* pr, const char* path, const char* params) {
    return guarded([&] {
        const auto& p = require(pr, "pagerank");
        auto out = open_out(path);
        write_parameter_header(parse_params(params), out);
        write_pagerank_tsv(p.pr, out);
        finish(out, path);
    });
}

void ifs_pagerank_free(ifs_pagerank* pr) { delete pr; }

// ---- detection

ifs_flow_params ifs_flow_params_default(void) {
    const FlowParams f;
    return {f.beta, f.seed, f.max_rounds, 0, 0};
}

ifs_status ifs_detect(const ifs_snapshot* snapshot, const ifs_pagerank* pr, double epsilon,
                      const ifs_flow_params* params, ifs_assignment** out) {
    return guarded([&] {
        const auto& s = require(snapshot, "snapshot");
        const auto& p = require(pr, "pagerank");
        require_out(out);
        auto result = detect_communities(s.get(), p.pr, epsilon, to_flow(params));
        *out = new ifs_assignment{std::move(result.assignment), result.rounds};
    });
}

size_t ifs_assignment_node_count(const ifs_assignment* a) { return a ? a->assignment.node_count() : 0; }
size_t ifs_assignment_community_count(const ifs_assignment* a) { return a ? a->assignment.community_count() : 0; }
size_t ifs_assignment_labeled_count(const ifs_assignment* a) { return a ? a->assignment.labeled_count() : 0; }
size_t ifs_assignment_rounds(const ifs_assignment* a) { return a ? a->rounds : 0; }

int32_t ifs_assignment_label_of(const ifs_assignment* a, const char* student) {
    if (!a || !student)
        return kNoLabel;
    const auto& names = *a->assignment.node_names();
    const auto it = std::lower_bound(names.begin(), names.end(), std::string_view(student));
    if (it == names.end() || *it != student)
        return kNoLabel;
    return a->assignment.label_of(static_cast<NodeIndex>(it - names.begin()));
}

ifs_status ifs_assignment_write_json(const ifs_assignment* a, double time, double epsilon,
                                     const ifs_flow_params* flow, const char* path, const char* params) {
    return guarded([&] {
        const auto& as = require(a, "assignment");
        const auto f = to_flow(flow);
        DetectionMeta meta{time, epsilon, f.beta, f.seed, as.rounds, parse_params(params)};
        auto out = open_out(path);
        write_communities_json(as.assignment, meta, out);
        finish(out, path);
    });
}

ifs_status ifs_assignment_write_ground_truth(const ifs_assignment* a, uint64_t seed, const char* path,
                                             const char* params) {
    return guarded([&] {
        const auto& as = require(a, "assignment");
        auto out = open_out(path);
        write_ground_truth_json(as.assignment.to_labeling(), seed, parse_params(params), out);
        finish(out, path);
    });
}

ifs_status ifs_assignment_read_json(const char* path, ifs_assignment** out) {
    return guarded([&] {
        require_out(out);
        auto in = open_in(path);
        *out = new ifs_assignment{read_assignment_json(in), 0};
    });
}

void ifs_assignment_free(ifs_assignment* a) { delete a; }

// ---- evaluation

ifs_status ifs_modularity(const ifs_snapshot* snapshot, const ifs_assignment* a, int symmetrized, double* out) {
    return guarded([&] {
        const auto& s = require(snapshot, "snapshot");
        const auto& as = require(a, "assignment");
        if (!out)
            throw std::invalid_argument("null output pointer");
        *out = modularity(s.get(), as.assignment, symmetrized ? ModularityKind::symmetrized : ModularityKind::directed);
    });
}

ifs_status ifs_partition_report_compute(const ifs_snapshot* snapshot, const ifs_assignment* a, int symmetrized,
                                        ifs_partition_report* out) {
    return guarded([&] {
        const auto& s = require(snapshot, "snapshot");
        const auto& as = require(a, "assignment");
        if (!out)
            throw std::invalid_argument("null output pointer");
        const auto r = partition_report(s.get(), as.assignment,
                                        symmetrized ? ModularityKind::symmetrized : ModularityKind::directed);
        *out = {r.modularity, r.community_count, r.avg_size, r.isolated_count};
    });
}

ifs_status ifs_nmi(const ifs_assignment* a, const ifs_assignment* b, double* out) {
    return guarded([&] {
        const auto& x = require(a, "assignment");
        const auto& y = require(b, "assignment");
        if (!out)
            throw std::invalid_argument("null output pointer");
        *out = nmi(x.assignment.to_labeling(), y.assignment.to_labeling());
    });
}

ifs_status ifs_sweep(const ifs_snapshot* snapshot, const ifs_pagerank* pr, const double* epsilons, size_t count,
                     const ifs_flow_params* params, ifs_sweep_row* rows) {
    return guarded([&] {
        const auto& s = require(snapshot, "snapshot");
        const auto& p = require(pr, "pagerank");
        if (!epsilons || !rows)
            throw std::invalid_argument("null pointer");
        const auto table = sweep_epsilon(s.get(), p.pr, std::span<const double>(epsilons, count), to_flow(params));
        for (size_t i = 0; i < table.size(); ++i)
            rows[i] = {table[i].epsilon, table[i].modularity, table[i].community_count, table[i].avg_size};
    });
}

ifs_status ifs_category_map_read(const char* path, ifs_category_map** out) {
    return guarded([&] {
        require_out(out);
        auto in = open_in(path);
        *out = new ifs_category_map{read_category_map(in)};
    });
}

ifs_status ifs_category_map_write(const ifs_category_map* map, const char* path) {
    return guarded([&] {
        const auto& m = require(map, "category map");
        auto out = open_out(path);
        write_category_map(m.map, out);
        finish(out, path);
    });
}

void ifs_category_map_free(ifs_category_map* map) { delete map; }

ifs_status ifs_variance_comparison(const ifs_event_log* log, const ifs_category_map* categories,
                                   int64_t semester_begin, int64_t semester_end, const ifs_assignment* a,
                                   ifs_variance_row* rows) {
    return guarded([&] {
        const auto& l = require(log, "event log");
        const auto& c = require(categories, "category map");
        const auto& as = require(a, "assignment");
        if (!rows)
            throw std::invalid_argument("null output pointer");
        if (semester_end < semester_begin)
            throw std::invalid_argument("semester ends before it begins");
        const auto profiles = behavior_profiles(l.log, c.map, {semester_begin, semester_end});
        const auto table = variance_comparison(profiles, as.assignment.to_labeling());
        for (size_t i = 0; i < table.size(); ++i)
            rows[i] = {to_string(table[i].indicator), table[i].variance_all, table[i].mean_within,
                       table[i].communities_used};
    });
}

// ---- synthetic data

ifs_synth_config ifs_synth_config_default(void) {
    const SyntheticConfig c;
    auto count = [&](LocationCategory cat) {
        const auto it = c.locations_per_category.find(cat);
        return it == c.locations_per_category.end() ? size_t{0} : it->second;
    };
    return {c.n_students,
            c.n_communities,
            count(LocationCategory::cafeteria),
            count(LocationCategory::bath),
            count(LocationCategory::boiler),
            count(LocationCategory::shop),
            c.semester.begin,
            c.semester.end,
            c.intra_rate,
            c.inter_rate,
            c.jitter,
            c.window,
            c.seed,
            c.community_amounts ? 1 : 0,
            c.base_amount,
            c.amount_step};
}

ifs_status ifs_synth_generate(const ifs_synth_config* config, ifs_event_log** log, ifs_assignment** ground_truth,
                              ifs_category_map** categories) {
    return guarded([&] {
        const auto& cfg = require(config, "synthetic config");
        if (!log)
            throw std::invalid_argument("null output pointer");
        SyntheticConfig c;
        c.n_students = cfg.n_students;
        c.n_communities = cfg.n_communities;
        c.locations_per_category = {{LocationCategory::cafeteria, cfg.cafeterias},
                                    {LocationCategory::bath, cfg.baths},
                                    {LocationCategory::boiler, cfg.boilers},
                                    {LocationCategory::shop, cfg.shops}};
        c.semester = {cfg.semester_begin, cfg.semester_end};
        c.intra_rate = cfg.intra_rate;
        c.inter_rate = cfg.inter_rate;
        c.jitter = cfg.jitter;
        c.window = cfg.window;
        c.seed = cfg.seed;
        c.community_amounts = cfg.community_amounts != 0;
        c.base_amount = cfg.base_amount;
        c.amount_step = cfg.amount_step;
        auto data = generate(c);

        auto names = std::make_shared<std::vector<std::string>>();
        for (const auto& [student, label] : data.ground_truth)
            names->push_back(student);
        auto truth = std::make_unique<ifs_assignment>(
            ifs_assignment{CommunityAssignment::from_labeling(names, data.ground_truth), 0});
        auto cats = std::make_unique<ifs_category_map>(ifs_category_map{std::move(data.categories)});
        *log = new ifs_event_log{std::move(data.log)};
        if (ground_truth)
            *ground_truth = truth.release();
        if (categories)
            *categories = cats.release();
    });
}

} // extern "C"
