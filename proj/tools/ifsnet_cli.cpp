// ifsnet command-line front end. Talks to the library through the C API only.

#include <ifsnet/ifsnet.h>

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

enum Exit { kOk = 0, kUsage = 1, kData = 2, kNoConvergence = 3 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void check(ifs_status st, const std::string& what) {
    if (st == IFS_OK)
        return;
    const std::string msg = what + ": " + ifs_last_error();
    if (st == IFS_E_INVALID_ARGUMENT)
        throw UsageError(msg);
    throw DataError(msg);
}

template <class T, void (*Free)(T*)>
struct Deleter {
    void operator()(T* p) const { Free(p); }
};
using LogPtr = std::unique_ptr<ifs_event_log, Deleter<ifs_event_log, ifs_event_log_free>>;
using GraphPtr = std::unique_ptr<ifs_tie_graph, Deleter<ifs_tie_graph, ifs_tie_graph_free>>;
using SnapPtr = std::unique_ptr<ifs_snapshot, Deleter<ifs_snapshot, ifs_snapshot_free>>;
using RankPtr = std::unique_ptr<ifs_pagerank, Deleter<ifs_pagerank, ifs_pagerank_free>>;
using AssignPtr = std::unique_ptr<ifs_assignment, Deleter<ifs_assignment, ifs_assignment_free>>;
using CatPtr = std::unique_ptr<ifs_category_map, Deleter<ifs_category_map, ifs_category_map_free>>;

std::string num(double v) {
    char buf[64];
    const auto r = std::to_chars(buf, buf + sizeof buf, v);
    return {buf, r.ptr};
}

// key=value lines handed to every writer
class Params {
public:
    void add(const std::string& key, const std::string& value) { text_ += key + "=" + value + "\n"; }
    void add(const std::string& key, double value) { add(key, num(value)); }
    void add(const std::string& key, long long value) { add(key, std::to_string(value)); }
    void add(const std::string& key, unsigned long long value) { add(key, std::to_string(value)); }
    void add(const std::string& key, std::size_t value) { add(key, static_cast<unsigned long long>(value)); }
    void add(const std::string& key, bool value) { add(key, std::string(value ? "true" : "false")); }
    const char* c_str() const { return text_.c_str(); }

private:
    std::string text_;
};

// ---- shared option blocks

struct Decay {
    std::optional<double> half_life;
    std::optional<double> alpha;

    void attach(CLI::App* app) {
        auto* h = app->add_option("--half-life", half_life, "Tie half-life in seconds [default 604800 = 7 days]");
        auto* a = app->add_option("--alpha", alpha, "Decay rate per second (alternative to --half-life)");
        h->excludes(a);
    }
    double rate() const {
        if (alpha) {
            if (!(*alpha > 0.0) || !std::isfinite(*alpha))
                throw UsageError("--alpha must be positive");
            return *alpha;
        }
        const double hl = half_life.value_or(ifs_default_half_life());
        if (!(hl > 0.0) || !std::isfinite(hl))
            throw UsageError("--half-life must be positive");
        return ifs_alpha_from_half_life(hl);
    }
    void record(Params& p) const {
        const double a = rate();
        p.add("alpha", a);
        p.add("half_life", std::log(2.0) / a);
    }
};

struct When {
    std::string time = "end";

    void attach(CLI::App* app) {
        app->add_option("--time", time, "Snapshot time: epoch seconds or 'end' (last event) [default end]");
    }
    double resolve(const ifs_tie_graph* g) const {
        if (time == "end") {
            int64_t first = 0, last = 0;
            ifs_tie_graph_time_range(g, &first, &last);
            return static_cast<double>(last);
        }
        double t = 0.0;
        const auto r = std::from_chars(time.data(), time.data() + time.size(), t);
        if (r.ec != std::errc() || r.ptr != time.data() + time.size() || !std::isfinite(t))
            throw UsageError("--time must be a number or 'end'");
        return t;
    }
};

struct Walk {
    double lambda = 0.85;
    double tolerance = 1e-10;
    std::size_t max_iterations = 1000;

    void attach(CLI::App* app) {
        app->add_option("--lambda", lambda, "PageRank damping probability [default 0.85]");
        app->add_option("--tolerance", tolerance, "PageRank L1 convergence tolerance [default 1e-10]");
        app->add_option("--max-iterations", max_iterations, "PageRank iteration cap [default 1000]");
    }
    ifs_walk_params get() const {
        if (!(lambda > 0.0 && lambda < 1.0))
            throw UsageError("--lambda must lie in (0, 1)");
        if (!(tolerance > 0.0))
            throw UsageError("--tolerance must be positive");
        if (max_iterations == 0)
            throw UsageError("--max-iterations must be positive");
        auto w = ifs_walk_params_default();
        w.damping = lambda;
        w.tolerance = tolerance;
        w.max_iterations = max_iterations;
        return w;
    }
    void record(Params& p) const {
        p.add("lambda", lambda);
        p.add("tolerance", tolerance);
        p.add("max_iterations", max_iterations);
    }
};

struct Flow {
    double beta = 0.25;
    unsigned long long seed = 0;
    std::size_t max_rounds = 100;
    bool single_hop = false;
    bool quiet_round = false;

    void attach(CLI::App* app) {
        app->add_option("--beta", beta, "Propagation exponent in (0, 1) [default 0.25]");
        app->add_option("--seed", seed, "Random seed for label propagation [default 0]");
        app->add_option("--max-rounds", max_rounds, "Propagation round cap [default 100]");
        app->add_flag("--single-hop", single_hop, "Only origins transmit labels [default: labeled nodes relay]");
        app->add_flag("--quiet-round", quiet_round,
                      "Stop after the first round with no new label [default: stop when no relay can reach an "
                      "unlabeled node]");
    }
    ifs_flow_params get() const {
        if (!(beta > 0.0 && beta < 1.0))
            throw UsageError("--beta must lie in (0, 1)");
        if (max_rounds == 0)
            throw UsageError("--max-rounds must be positive");
        auto f = ifs_flow_params_default();
        f.beta = beta;
        f.seed = seed;
        f.max_rounds = max_rounds;
        f.single_hop = single_hop;
        f.stop_on_quiet_round = quiet_round;
        return f;
    }
    void record(Params& p) const {
        p.add("beta", beta);
        p.add("seed", seed);
        p.add("max_rounds", max_rounds);
        p.add("relay", std::string(single_hop ? "single_hop" : "multi_hop"));
        p.add("stop", std::string(quiet_round ? "quiet_round" : "exhausted"));
    }
};

void check_epsilon(double eps) {
    if (!(eps > 0.0 && eps <= 1.0))
        throw UsageError("--epsilon must lie in (0, 1]");
}

// ---- small helpers

fs::path prepare_out(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec)
        throw DataError("cannot create output directory " + dir + ": " + ec.message());
    return fs::path(dir);
}

std::string path_in(const fs::path& dir, const char* name) { return (dir / name).string(); }

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out)
        throw DataError("cannot write " + path.string());
}

std::string comment_header(const Params& p) {
    std::string out;
    std::istringstream in(p.c_str());
    for (std::string line; std::getline(in, line);)
        out += "# " + line + "\n";
    return out;
}

LogPtr read_log(const std::string& path) {
    ifs_event_log* raw = nullptr;
    check(ifs_event_log_read_csv(path.c_str(), &raw), "reading " + path);
    return LogPtr(raw);
}

GraphPtr read_graph(const std::string& path) {
    ifs_tie_graph* raw = nullptr;
    check(ifs_tie_graph_read(path.c_str(), &raw), "reading " + path);
    return GraphPtr(raw);
}

AssignPtr read_assignment(const std::string& path) {
    ifs_assignment* raw = nullptr;
    check(ifs_assignment_read_json(path.c_str(), &raw), "reading " + path);
    return AssignPtr(raw);
}

CatPtr read_categories(const std::string& path) {
    ifs_category_map* raw = nullptr;
    check(ifs_category_map_read(path.c_str(), &raw), "reading " + path);
    return CatPtr(raw);
}

SnapPtr take_snapshot(const ifs_tie_graph* g, double alpha, double t) {
    ifs_snapshot* raw = nullptr;
    check(ifs_snapshot_at(g, alpha, t, &raw), "snapshot");
    return SnapPtr(raw);
}

RankPtr rank(const ifs_snapshot* s, const ifs_walk_params& w) {
    ifs_pagerank* raw = nullptr;
    check(ifs_pagerank_compute(s, &w, &raw), "pagerank");
    return RankPtr(raw);
}

int warn_convergence(const ifs_pagerank* pr) {
    if (ifs_pagerank_converged(pr))
        return kOk;
    std::fprintf(stderr, "warning: PageRank did not converge after %zu iterations (residual %g)\n",
                 ifs_pagerank_iterations(pr), ifs_pagerank_residual(pr));
    return kNoConvergence;
}

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

std::vector<double> parse_epsilons(const std::string& text) {
    std::vector<double> out;
    if (text.empty()) {
        for (int k = 10; k >= 1; --k)
            out.push_back(0.05 * k);
        return out;
    }
    std::istringstream in(text);
    for (std::string tok; std::getline(in, tok, ',');) {
        double v = 0.0;
        const auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (r.ec != std::errc() || r.ptr != tok.data() + tok.size())
            throw UsageError("bad epsilon '" + tok + "'");
        check_epsilon(v);
        out.push_back(v);
    }
    if (out.empty())
        throw UsageError("--epsilons is empty");
    return out;
}

std::string epsilon_list(const std::vector<double>& eps) {
    std::string s;
    for (std::size_t i = 0; i < eps.size(); ++i)
        s += (i ? "," : "") + num(eps[i]);
    return s;
}

std::vector<ifs_sweep_row> run_sweep(const ifs_snapshot* s, const ifs_pagerank* pr, const std::vector<double>& eps,
                                     const ifs_flow_params& flow) {
    std::vector<ifs_sweep_row> rows(eps.size());
    check(ifs_sweep(s, pr, eps.data(), eps.size(), &flow, rows.data()), "sweep");
    return rows;
}

std::string sweep_table(const std::vector<ifs_sweep_row>& rows) {
    std::string t = "epsilon   modularity   communities   avg_size\n";
    for (const auto& r : rows) {
        char line[128];
        std::snprintf(line, sizeof line, "%6.0f%%   %10.4f   %11zu   %8.2f\n", r.epsilon * 100.0, r.modularity,
                      r.community_count, r.avg_size);
        t += line;
    }
    return t;
}

std::string sweep_csv(const std::vector<ifs_sweep_row>& rows, const Params& p) {
    std::string t = comment_header(p) + "epsilon,modularity,community_count,avg_size\n";
    for (const auto& r : rows)
        t += num(r.epsilon) + "," + fmt("%.12g", r.modularity) + "," + std::to_string(r.community_count) + "," +
             fmt("%.12g", r.avg_size) + "\n";
    return t;
}

std::vector<ifs_variance_row> variance(const ifs_event_log* log, const ifs_category_map* cats,
                                       std::optional<int64_t> begin, std::optional<int64_t> end,
                                       const ifs_assignment* a, Params& p) {
    int64_t first = 0, last = 0;
    ifs_event_log_time_range(log, &first, &last);
    const int64_t b = begin.value_or(first), e = end.value_or(last);
    p.add("semester_begin", static_cast<long long>(b));
    p.add("semester_end", static_cast<long long>(e));
    std::vector<ifs_variance_row> rows(IFS_INDICATOR_COUNT);
    check(ifs_variance_comparison(log, cats, b, e, a, rows.data()), "variance comparison");
    return rows;
}

std::string variance_table(const std::vector<ifs_variance_row>& rows) {
    std::string t = "indicator             variance_all    mean_within   communities\n";
    for (const auto& r : rows) {
        char line[160];
        std::snprintf(line, sizeof line, "%-18s  %14.6g  %13.6g   %11zu\n", r.indicator, r.variance_all,
                      r.mean_within, r.communities_used);
        t += line;
    }
    return t;
}

std::string variance_csv(const std::vector<ifs_variance_row>& rows, const Params& p) {
    std::string t = comment_header(p) + "indicator,variance_all,mean_within,communities_used\n";
    for (const auto& r : rows)
        t += std::string(r.indicator) + "," + fmt("%.12g", r.variance_all) + "," + fmt("%.12g", r.mean_within) +
             "," + std::to_string(r.communities_used) + "\n";
    return t;
}

std::string report_line(const char* name, const ifs_partition_report& r) {
    char line[200];
    std::snprintf(line, sizeof line, "%s: modularity %.6f, communities %zu, avg size %.2f, isolated %zu\n", name,
                  r.modularity, r.community_count, r.avg_size, r.isolated_count);
    return line;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"ifsnet: temporal co-location networks and information-flow community detection"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(ifs_version()));

    std::string input, graph_path, out_dir = ".", communities_path, truth_path, events_path, categories_path;
    int64_t window = 120;
    double epsilon = 0.20;
    std::size_t n_points = 1000;
    std::string epsilons_text;
    std::optional<int64_t> sem_begin, sem_end;
    std::vector<std::string> keep_locations;
    bool series = false, symmetrized = false;
    Decay decay;
    When when;
    Walk walk;
    Flow flow;

    auto add_out = [&](CLI::App* c) { c->add_option("--out", out_dir, "Output directory [default .]"); };
    auto add_graph = [&](CLI::App* c) {
        c->add_option("--graph", graph_path, "Tie graph file written by 'build'")->required();
    };
    auto add_semester = [&](CLI::App* c) {
        c->add_option("--semester-begin", sem_begin, "Profile range start, epoch seconds [default first event]");
        c->add_option("--semester-end", sem_end, "Profile range end, epoch seconds [default last event]");
    };

    auto* ingest = app.add_subcommand("ingest", "Validate an event CSV and keep spend records");
    ingest->add_option("--input", input, "Event CSV")->required();
    ingest->add_option("--locations", keep_locations, "Locations to keep [default all]")->delimiter(',');
    ingest->add_option("--categories", categories_path, "Keep only locations listed in this category map");
    add_out(ingest);

    auto* build = app.add_subcommand("build", "Co-occurrence counting and degree orientation");
    build->add_option("--input", input, "Event CSV")->required();
    build->add_option("--window", window, "Co-occurrence window in seconds, inclusive [default 120]");
    add_out(build);

    auto* snapshot = app.add_subcommand("snapshot", "Tie-decay weights at one time, optionally a sampled series");
    add_graph(snapshot);
    decay.attach(snapshot);
    when.attach(snapshot);
    snapshot->add_flag("--series", series, "Also sample n-points snapshots over the observed span");
    snapshot->add_option("--n-points", n_points, "Number of sampled time points [default 1000]");
    add_out(snapshot);

    auto* pagerank = app.add_subcommand("pagerank", "PageRank scores of a snapshot");
    add_graph(pagerank);
    decay.attach(pagerank);
    when.attach(pagerank);
    walk.attach(pagerank);
    add_out(pagerank);

    auto* detect = app.add_subcommand("detect", "Information-flow community detection on a snapshot");
    add_graph(detect);
    decay.attach(detect);
    when.attach(detect);
    walk.attach(detect);
    flow.attach(detect);
    detect->add_option("--epsilon", epsilon, "Fraction of top-PageRank nodes used as origins, (0, 1] [default 0.20]");
    add_out(detect);

    auto* evaluate = app.add_subcommand("evaluate", "Partition statistics, NMI and behaviour variance");
    add_graph(evaluate);
    decay.attach(evaluate);
    when.attach(evaluate);
    evaluate->add_option("--communities", communities_path, "Communities JSON from 'detect'")->required();
    evaluate->add_option("--truth", truth_path, "Ground-truth JSON for NMI");
    evaluate->add_option("--events", events_path, "Event CSV for behaviour indicators");
    evaluate->add_option("--categories", categories_path, "Location category map for behaviour indicators");
    evaluate->add_flag("--symmetrized", symmetrized, "Modularity of W + W^T instead of directed modularity");
    add_semester(evaluate);
    add_out(evaluate);

    auto* sweep = app.add_subcommand("sweep", "Detection over a grid of origin proportions");
    add_graph(sweep);
    decay.attach(sweep);
    when.attach(sweep);
    walk.attach(sweep);
    flow.attach(sweep);
    sweep->add_option("--epsilons", epsilons_text, "Comma-separated grid [default 0.5,0.45,...,0.05]");
    add_out(sweep);

    auto sc = ifs_synth_config_default();
    double weeks = static_cast<double>(sc.semester_end - sc.semester_begin) / 604800.0;
    bool uniform_amounts = false;
    unsigned long long synth_seed = sc.seed;
    auto* synth = app.add_subcommand("synth", "Planted-community synthetic event log");
    synth->add_option("--students", sc.n_students, "Number of students [default 200]");
    synth->add_option("--communities", sc.n_communities, "Number of planted communities [default 4]");
    synth->add_option("--intra", sc.intra_rate, "Co-visits per same-community pair per week [default 3]");
    synth->add_option("--inter", sc.inter_rate, "Co-visits per cross-community pair per week [default 0.2]");
    synth->add_option("--weeks", weeks, "Semester length in weeks [default 12]");
    synth->add_option("--begin", sc.semester_begin, "Semester start, epoch seconds [default 1535932800]");
    synth->add_option("--jitter", sc.jitter, "Max seconds between paired visits [default 60]");
    synth->add_option("--window", sc.window, "Co-occurrence window the jitter must fit in [default 120]");
    synth->add_option("--cafeterias", sc.cafeterias, "Cafeteria count [default 33]");
    synth->add_option("--baths", sc.baths, "Bathroom count [default 6]");
    synth->add_option("--boilers", sc.boilers, "Boiler room count [default 6]");
    synth->add_option("--shops", sc.shops, "Store count [default 4]");
    synth->add_option("--seed", synth_seed, "Generator seed [default 1]");
    synth->add_flag("--uniform-amounts", uniform_amounts, "Same spending distribution in every community");
    add_out(synth);

    auto* report = app.add_subcommand("report", "Sweep, community statistics and variance tables with plot data");
    add_graph(report);
    decay.attach(report);
    when.attach(report);
    walk.attach(report);
    flow.attach(report);
    report->add_option("--epsilon", epsilon, "Origin proportion for the statistics tables [default 0.20]");
    report->add_option("--epsilons", epsilons_text, "Sweep grid [default 0.5,0.45,...,0.05]");
    report->add_option("--events", events_path, "Event CSV for the variance table");
    report->add_option("--categories", categories_path, "Location category map for the variance table");
    add_semester(report);
    add_out(report);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*ingest) {
            auto log = read_log(input);
            std::vector<std::string> keep = keep_locations;
            if (!categories_path.empty()) {
                if (!keep.empty())
                    throw UsageError("--locations and --categories are exclusive");
                // the category file lists location<TAB>category
                std::ifstream in(categories_path);
                if (!in)
                    throw DataError("cannot open " + categories_path);
                for (std::string line; std::getline(in, line);)
                    if (!line.empty() && line[0] != '#')
                        keep.push_back(line.substr(0, line.find('\t')));
                if (keep.empty())
                    throw DataError(categories_path + " lists no locations");
            }
            std::vector<const char*> ptrs;
            for (const auto& k : keep)
                ptrs.push_back(k.c_str());
            ifs_event_log* raw = nullptr;
            check(ifs_event_log_filter(log.get(), ptrs.data(), ptrs.size(), &raw), "filter");
            LogPtr kept(raw);
            const auto dir = prepare_out(out_dir);
            check(ifs_event_log_write_csv(kept.get(), path_in(dir, "events.csv").c_str()), "writing events.csv");
            std::printf("%zu of %zu records kept, %zu students, %zu locations\n", ifs_event_log_record_count(kept.get()),
                        ifs_event_log_record_count(log.get()), ifs_event_log_student_count(kept.get()),
                        ifs_event_log_location_count(kept.get()));
            return kOk;
        }

        if (*build) {
            if (window <= 0)
                throw UsageError("--window must be positive");
            auto log = read_log(input);
            ifs_event_log* raw = nullptr;
            check(ifs_event_log_filter(log.get(), nullptr, 0, &raw), "filter");
            LogPtr spend(raw);
            ifs_tie_graph* g = nullptr;
            check(ifs_tie_graph_build(spend.get(), window, &g), "build");
            GraphPtr graph(g);
            Params p;
            p.add("input", input);
            p.add("window", static_cast<long long>(window));
            const auto dir = prepare_out(out_dir);
            check(ifs_tie_graph_write_cooccurrence_tsv(graph.get(), path_in(dir, "cooccurrence.tsv").c_str(), p.c_str()),
                  "writing cooccurrence.tsv");
            check(ifs_tie_graph_write_directed_tsv(graph.get(), path_in(dir, "directed.tsv").c_str(), p.c_str()),
                  "writing directed.tsv");
            check(ifs_tie_graph_write(graph.get(), path_in(dir, "tiegraph.tsv").c_str(), p.c_str()),
                  "writing tiegraph.tsv");
            std::printf("%zu students, %zu undirected edges, %zu directed edges\n", ifs_tie_graph_node_count(graph.get()),
                        ifs_tie_graph_undirected_edge_count(graph.get()),
                        ifs_tie_graph_directed_edge_count(graph.get()));
            return kOk;
        }

        if (*synth) {
            if (!(weeks > 0.0))
                throw UsageError("--weeks must be positive");
            sc.semester_end = sc.semester_begin + static_cast<int64_t>(std::llround(weeks * 604800.0));
            sc.seed = synth_seed;
            sc.community_amounts = uniform_amounts ? 0 : 1;
            ifs_event_log* log = nullptr;
            ifs_assignment* truth = nullptr;
            ifs_category_map* cats = nullptr;
            check(ifs_synth_generate(&sc, &log, &truth, &cats), "synth");
            LogPtr l(log);
            AssignPtr t(truth);
            CatPtr c(cats);
            Params p;
            p.add("students", sc.n_students);
            p.add("communities", sc.n_communities);
            p.add("intra_rate", sc.intra_rate);
            p.add("inter_rate", sc.inter_rate);
            p.add("semester_begin", static_cast<long long>(sc.semester_begin));
            p.add("semester_end", static_cast<long long>(sc.semester_end));
            p.add("jitter", static_cast<long long>(sc.jitter));
            p.add("window", static_cast<long long>(sc.window));
            p.add("cafeterias", sc.cafeterias);
            p.add("baths", sc.baths);
            p.add("boilers", sc.boilers);
            p.add("shops", sc.shops);
            p.add("community_amounts", !uniform_amounts);
            const auto dir = prepare_out(out_dir);
            check(ifs_event_log_write_csv(l.get(), path_in(dir, "events.csv").c_str()), "writing events.csv");
            check(ifs_assignment_write_ground_truth(t.get(), sc.seed, path_in(dir, "ground_truth.json").c_str(),
                                                    p.c_str()),
                  "writing ground_truth.json");
            check(ifs_category_map_write(c.get(), path_in(dir, "categories.tsv").c_str()), "writing categories.tsv");
            std::printf("%zu events, %zu students\n", ifs_event_log_record_count(l.get()),
                        ifs_event_log_student_count(l.get()));
            return kOk;
        }

        // everything below starts from a tie graph and a snapshot time
        auto graph = read_graph(graph_path);
        const double alpha = decay.rate();
        const double t = when.resolve(graph.get());
        Params p;
        p.add("graph", graph_path);
        p.add("window", static_cast<long long>(ifs_tie_graph_window(graph.get())));
        decay.record(p);
        p.add("time", t);
        const auto dir = prepare_out(out_dir);

        if (*snapshot) {
            auto snap = take_snapshot(graph.get(), alpha, t);
            check(ifs_snapshot_write_tsv(snap.get(), alpha, path_in(dir, "snapshot.tsv").c_str(), p.c_str()),
                  "writing snapshot.tsv");
            if (series) {
                if (n_points < 2)
                    throw UsageError("--n-points must be at least 2");
                int64_t first = 0, last = 0;
                ifs_tie_graph_time_range(graph.get(), &first, &last);
                if (first >= last)
                    throw DataError("observed span is empty; cannot sample a series");
                Params sp = p;
                sp.add("n_points", n_points);
                std::string csv = comment_header(sp) + "index,time,edge_count,total_weight\n";
                struct Ctx {
                    std::string* csv;
                } ctx{&csv};
                auto visit = [](void* user, size_t i, const ifs_snapshot* s) -> int {
                    auto* c = static_cast<Ctx*>(user);
                    *c->csv += std::to_string(i) + "," + fmt("%.17g", ifs_snapshot_time(s)) + "," +
                               std::to_string(ifs_snapshot_edge_count(s)) + "," +
                               fmt("%.12g", ifs_snapshot_total_weight(s)) + "\n";
                    return 0;
                };
                check(ifs_sample_snapshots(graph.get(), alpha, static_cast<double>(first), static_cast<double>(last),
                                           n_points, visit, &ctx),
                      "sampling");
                write_text(dir / "snapshot_series.csv", csv);
            }
            std::printf("t=%s: %zu arcs, total weight %.6g\n", num(t).c_str(), ifs_snapshot_edge_count(snap.get()),
                        ifs_snapshot_total_weight(snap.get()));
            return kOk;
        }

        auto snap = take_snapshot(graph.get(), alpha, t);

        if (*pagerank) {
            walk.record(p);
            auto pr = rank(snap.get(), walk.get());
            check(ifs_pagerank_write_tsv(pr.get(), path_in(dir, "pagerank.tsv").c_str(), p.c_str()),
                  "writing pagerank.tsv");
            std::printf("%zu iterations, residual %.3g\n", ifs_pagerank_iterations(pr.get()),
                        ifs_pagerank_residual(pr.get()));
            return warn_convergence(pr.get());
        }

        if (*detect) {
            check_epsilon(epsilon);
            walk.record(p);
            flow.record(p);
            p.add("epsilon", epsilon);
            const auto f = flow.get();
            auto pr = rank(snap.get(), walk.get());
            ifs_assignment* raw = nullptr;
            check(ifs_detect(snap.get(), pr.get(), epsilon, &f, &raw), "detect");
            AssignPtr a(raw);
            check(ifs_assignment_write_json(a.get(), t, epsilon, &f, path_in(dir, "communities.json").c_str(),
                                            p.c_str()),
                  "writing communities.json");
            std::printf("%zu communities, %zu labeled of %zu, %zu rounds\n", ifs_assignment_community_count(a.get()),
                        ifs_assignment_labeled_count(a.get()), ifs_assignment_node_count(a.get()),
                        ifs_assignment_rounds(a.get()));
            return warn_convergence(pr.get());
        }

        if (*evaluate) {
            p.add("communities", communities_path);
            p.add("modularity", std::string(symmetrized ? "symmetrized" : "directed"));
            auto a = read_assignment(communities_path);
            ifs_partition_report rep{};
            check(ifs_partition_report_compute(snap.get(), a.get(), symmetrized, &rep), "evaluate");
            std::string text = report_line("partition", rep);
            std::string json = "{\n  \"parameters\": {";
            {
                std::istringstream in(p.c_str());
                bool first = true;
                for (std::string line; std::getline(in, line);) {
                    const auto eq = line.find('=');
                    std::string v = line.substr(eq + 1), esc;
                    for (const char ch : v) {
                        if (ch == '"' || ch == '\\')
                            esc += '\\';
                        esc += ch;
                    }
                    json += std::string(first ? "" : ",") + "\n    \"" + line.substr(0, eq) + "\": \"" + esc + "\"";
                    first = false;
                }
            }
            json += "\n  },\n  \"modularity\": " + fmt("%.12g", rep.modularity) +
                    ",\n  \"community_count\": " + std::to_string(rep.community_count) +
                    ",\n  \"avg_size\": " + fmt("%.12g", rep.avg_size) +
                    ",\n  \"isolated_count\": " + std::to_string(rep.isolated_count);
            if (!truth_path.empty()) {
                auto truth = read_assignment(truth_path);
                double v = 0.0;
                check(ifs_nmi(a.get(), truth.get(), &v), "nmi");
                json += ",\n  \"nmi\": " + fmt("%.12g", v);
                text += "nmi vs ground truth: " + fmt("%.6f", v) + "\n";
            }
            if (!events_path.empty() || !categories_path.empty()) {
                if (events_path.empty() || categories_path.empty())
                    throw UsageError("--events and --categories go together");
                auto log = read_log(events_path);
                auto cats = read_categories(categories_path);
                Params vp;
                const auto rows = variance(log.get(), cats.get(), sem_begin, sem_end, a.get(), vp);
                json += ",\n  \"variance\": [";
                for (std::size_t i = 0; i < rows.size(); ++i)
                    json += std::string(i ? "," : "") + "\n    {\"indicator\": \"" + rows[i].indicator +
                            "\", \"variance_all\": " + fmt("%.12g", rows[i].variance_all) +
                            ", \"mean_within\": " + fmt("%.12g", rows[i].mean_within) +
                            ", \"communities_used\": " + std::to_string(rows[i].communities_used) + "}";
                json += "\n  ]";
                text += variance_table(rows);
            }
            json += "\n}\n";
            write_text(dir / "evaluation.json", json);
            std::fputs(text.c_str(), stdout);
            return kOk;
        }

        if (*sweep) {
            walk.record(p);
            flow.record(p);
            const auto eps = parse_epsilons(epsilons_text);
            p.add("epsilons", epsilon_list(eps));
            auto pr = rank(snap.get(), walk.get());
            const auto rows = run_sweep(snap.get(), pr.get(), eps, flow.get());
            const auto table = sweep_table(rows);
            write_text(dir / "sweep.txt", comment_header(p) + table);
            write_text(dir / "sweep.csv", sweep_csv(rows, p));
            std::fputs(table.c_str(), stdout);
            return warn_convergence(pr.get());
        }

        if (*report) {
            check_epsilon(epsilon);
            walk.record(p);
            flow.record(p);
            const auto eps = parse_epsilons(epsilons_text);
            p.add("epsilon", epsilon);
            p.add("epsilons", epsilon_list(eps));
            const auto f = flow.get();
            auto pr = rank(snap.get(), walk.get());
            const auto rows = run_sweep(snap.get(), pr.get(), eps, f);

            ifs_assignment* raw = nullptr;
            check(ifs_detect(snap.get(), pr.get(), epsilon, &f, &raw), "detect");
            AssignPtr a(raw);
            ifs_partition_report rep{};
            check(ifs_partition_report_compute(snap.get(), a.get(), 0, &rep), "evaluate");

            std::string text = comment_header(p);
            text += "\nOrigin proportion sweep\n" + sweep_table(rows);
            text += "\nCommunities at epsilon " + num(epsilon) + "\n";
            text += "communities   avg_size   isolated   modularity\n";
            char line[160];
            std::snprintf(line, sizeof line, "%11zu   %8.2f   %8zu   %10.4f\n", rep.community_count, rep.avg_size,
                          rep.isolated_count, rep.modularity);
            text += line;
            write_text(dir / "sweep.csv", sweep_csv(rows, p));
            write_text(dir / "communities_stats.csv",
                       comment_header(p) + "community_count,avg_size,isolated_count,modularity\n" +
                           std::to_string(rep.community_count) + "," + fmt("%.12g", rep.avg_size) + "," +
                           std::to_string(rep.isolated_count) + "," + fmt("%.12g", rep.modularity) + "\n");

            if (!events_path.empty() || !categories_path.empty()) {
                if (events_path.empty() || categories_path.empty())
                    throw UsageError("--events and --categories go together");
                auto log = read_log(events_path);
                auto cats = read_categories(categories_path);
                Params vp = p;
                const auto vrows = variance(log.get(), cats.get(), sem_begin, sem_end, a.get(), vp);
                text += "\nBehaviour variance before and after grouping\n" + variance_table(vrows);
                write_text(dir / "variance.csv", variance_csv(vrows, vp));
            }
            write_text(dir / "report.txt", text);
            std::fputs(text.c_str(), stdout);
            return warn_convergence(pr.get());
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kUsage;
    } catch (const DataError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kData;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kData;
    }
    return kUsage;
}
