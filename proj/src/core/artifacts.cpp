#include <ifsnet/artifacts.hpp>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

namespace ifsnet {

using nlohmann::json;

namespace {

std::vector<std::string_view> split_tabs(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto pos = line.find('\t', start);
        if (pos == std::string_view::npos) {
            out.push_back(line.substr(start));
            return out;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

template <typename T>
T to_number(std::string_view text, std::size_t line) {
    T value{};
    const auto* end = text.data() + text.size();
    const auto res = std::from_chars(text.data(), end, value);
    if (res.ec != std::errc{} || res.ptr != end || text.empty())
        throw ParseError(line, "bad number '" + std::string(text) + "'");
    return value;
}

json parameters_json(const Parameters& params) {
    json obj = json::object();
    for (const auto& [k, v] : params)
        obj[k] = v;
    return obj;
}

json parse_json(std::istream& in) {
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(0, std::string("invalid JSON: ") + e.what());
    }
}

} // namespace

void write_parameter_header(const Parameters& params, std::ostream& out) {
    for (const auto& [k, v] : params)
        out << "# " << k << '=' << v << '\n';
}

void write_tie_graph(const DirectedTieGraph& g, std::ostream& out, const Parameters& params) {
    out << "# ifsnet tie graph v1\n";
    write_parameter_header(params, out);
    out << "window\t" << g.window() << '\n';
    out << "observed\t" << g.observed().begin << '\t' << g.observed().end << '\n';
    const auto& names = *g.node_names();
    for (NodeIndex u = 0; u < g.node_count(); ++u)
        out << "node\t" << names[u] << '\t' << g.degrees()[u] << '\n';
    for (const auto& e : g.edges()) {
        out << "edge\t" << names[e.src] << '\t' << names[e.dst] << '\t';
        const auto times = g.times(e);
        for (std::size_t k = 0; k < times.size(); ++k)
            out << (k ? "," : "") << times[k];
        out << '\n';
    }
}

DirectedTieGraph read_tie_graph(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    Timestamp window = 0;
    TimeSpan observed;
    std::vector<std::string> names;
    std::vector<std::size_t> degrees;
    struct RawEdge {
        std::string src, dst;
        std::vector<Timestamp> times;
        std::size_t line;
    };
    std::vector<RawEdge> raw;
    bool saw_window = false;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        const auto f = split_tabs(line);
        if (f[0] == "window" && f.size() == 2) {
            window = to_number<Timestamp>(f[1], line_no);
            saw_window = true;
        } else if (f[0] == "observed" && f.size() == 3) {
            observed = {to_number<Timestamp>(f[1], line_no), to_number<Timestamp>(f[2], line_no)};
        } else if (f[0] == "node" && f.size() == 3) {
            if (!names.empty() && !(names.back() < f[1]))
                throw ParseError(line_no, "node ids must be strictly ascending");
            names.emplace_back(f[1]);
            degrees.push_back(to_number<std::size_t>(f[2], line_no));
        } else if (f[0] == "edge" && f.size() == 4) {
            RawEdge e{std::string(f[1]), std::string(f[2]), {}, line_no};
            std::string_view list = f[3];
            while (!list.empty()) {
                const auto comma = list.find(',');
                e.times.push_back(to_number<Timestamp>(list.substr(0, comma), line_no));
                list = comma == std::string_view::npos ? std::string_view{} : list.substr(comma + 1);
            }
            if (e.times.empty())
                throw ParseError(line_no, "edge without co-occurrence times");
            raw.push_back(std::move(e));
        } else {
            throw ParseError(line_no, "unrecognized tie graph record");
        }
    }
    if (!saw_window)
        throw ParseError(0, "tie graph has no window record");

    auto shared = std::make_shared<std::vector<std::string>>(std::move(names));
    auto index_of = [&](const std::string& name, std::size_t ln) {
        const auto it = std::lower_bound(shared->begin(), shared->end(), name);
        if (it == shared->end() || *it != name)
            throw ParseError(ln, "edge references unknown node '" + name + "'");
        return static_cast<NodeIndex>(it - shared->begin());
    };

    std::map<std::pair<NodeIndex, NodeIndex>, std::uint32_t> tie_of;
    std::vector<std::vector<Timestamp>> ties;
    std::vector<DirectedEdge> edges;
    for (auto& e : raw) {
        const auto s = index_of(e.src, e.line), d = index_of(e.dst, e.line);
        if (s == d)
            throw ParseError(e.line, "self-loop");
        const auto key = std::minmax(s, d);
        auto [it, inserted] = tie_of.try_emplace({key.first, key.second}, static_cast<std::uint32_t>(ties.size()));
        if (inserted) {
            std::sort(e.times.begin(), e.times.end());
            ties.push_back(std::move(e.times));
        } else {
            std::sort(e.times.begin(), e.times.end());
            if (ties[it->second] != e.times)
                throw ParseError(e.line, "reverse edge carries different co-occurrence times");
        }
        edges.push_back({s, d, it->second});
    }
    if (degrees.size() != shared->size())
        throw ParseError(0, "degree table mismatch");
    try {
        return DirectedTieGraph(std::move(shared), std::move(degrees), std::move(edges), std::move(ties), observed, window);
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

void write_communities_json(const CommunityAssignment& a, const DetectionMeta& meta, std::ostream& out) {
    const auto& names = *a.node_names();
    json doc;
    doc["time"] = meta.time;
    doc["epsilon"] = meta.epsilon;
    doc["beta"] = meta.beta;
    doc["seed"] = meta.seed;
    doc["rounds"] = meta.rounds;
    doc["parameters"] = parameters_json(meta.params);
    json communities = json::array();
    for (const auto& [label, members] : a.communities()) {
        json c;
        c["label"] = label;
        if (const auto it = a.origins().find(label); it != a.origins().end())
            c["origin"] = names[it->second];
        else
            c["origin"] = nullptr;
        json m = json::array();
        for (const auto u : members)
            m.push_back(names[u]);
        c["members"] = std::move(m);
        communities.push_back(std::move(c));
    }
    doc["communities"] = std::move(communities);
    json isolated = json::array();
    for (const auto u : a.isolated())
        isolated.push_back(names[u]);
    doc["isolated"] = std::move(isolated);
    out << doc.dump(2) << '\n';
}

void write_ground_truth_json(const Labeling& truth, std::uint64_t seed, const Parameters& params, std::ostream& out) {
    json doc;
    doc["seed"] = seed;
    doc["parameters"] = parameters_json(params);
    json labels = json::object();
    for (const auto& [student, label] : truth)
        labels[student] = label;
    doc["labels"] = std::move(labels);
    out << doc.dump(2) << '\n';
}

CommunityAssignment read_assignment_json(std::istream& in) {
    const json doc = parse_json(in);
    std::map<std::string, Label> labels;
    std::map<Label, std::string> origins;
    try {
        if (doc.contains("labels")) {
            for (const auto& [student, label] : doc.at("labels").items())
                labels[student] = label.get<Label>();
        } else {
            for (const auto& c : doc.at("communities")) {
                const auto label = c.at("label").get<Label>();
                for (const auto& m : c.at("members")) {
                    const auto [it, inserted] = labels.emplace(m.get<std::string>(), label);
                    if (!inserted)
                        throw ParseError(0, "student '" + it->first + "' appears in two communities");
                }
                if (c.contains("origin") && c.at("origin").is_string())
                    origins[label] = c.at("origin").get<std::string>();
            }
            for (const auto& s : doc.value("isolated", json::array()))
                labels.emplace(s.get<std::string>(), kNoLabel);
        }
    } catch (const json::exception& e) {
        throw ParseError(0, std::string("malformed assignment JSON: ") + e.what());
    }

    auto names = std::make_shared<std::vector<std::string>>();
    std::vector<Label> values;
    for (const auto& [student, label] : labels) {
        names->push_back(student);
        values.push_back(label);
    }
    std::map<Label, NodeIndex> origin_index;
    for (const auto& [label, student] : origins) {
        const auto it = std::lower_bound(names->begin(), names->end(), student);
        if (it == names->end() || *it != student)
            throw ParseError(0, "origin '" + student + "' is not a member");
        origin_index[label] = static_cast<NodeIndex>(it - names->begin());
    }
    try {
        return CommunityAssignment(std::move(names), std::move(values), std::move(origin_index));
    } catch (const std::invalid_argument& e) {
        throw ParseError(0, e.what());
    }
}

void write_category_map(const CategoryMap& map, std::ostream& out) {
    for (const auto& [location, cat] : map)
        out << location << '\t' << to_string(cat) << '\n';
}

CategoryMap read_category_map(std::istream& in) {
    CategoryMap map;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        const auto f = split_tabs(line);
        if (f.size() != 2 || f[0].empty())
            throw ParseError(line_no, "expected location<TAB>category");
        try {
            map[std::string(f[0])] = parse_location_category(f[1]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
    }
    return map;
}

} // namespace ifsnet
