#pragma once

#include <ifsnet/ifs.hpp>
#include <ifsnet/metrics.hpp>
#include <ifsnet/orient.hpp>

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace ifsnet {

/// Ordered key/value run parameters embedded in every artifact.
using Parameters = std::vector<std::pair<std::string, std::string>>;

/// One "# key=value" line per parameter.
void write_parameter_header(const Parameters& params, std::ostream& out);

/// Persisted tie graph: node degrees, observation span, window and every
/// directed edge with its co-occurrence times. Lines starting with '#' are
/// comments.
void write_tie_graph(const DirectedTieGraph& g, std::ostream& out, const Parameters& params = {});
DirectedTieGraph read_tie_graph(std::istream& in);

struct DetectionMeta {
    double time = 0.0;
    double epsilon = 0.0;
    double beta = 0.0;
    std::uint64_t seed = 0;
    std::size_t rounds = 0;
    Parameters params;
};

/// {time, epsilon, beta, seed, rounds, parameters, communities: [{label,
/// origin, members}], isolated}. Members include the origin.
void write_communities_json(const CommunityAssignment& a, const DetectionMeta& meta, std::ostream& out);

/// {seed, parameters, labels: {student: community}}.
void write_ground_truth_json(const Labeling& truth, std::uint64_t seed, const Parameters& params, std::ostream& out);

/// Reads either JSON layout above. The node table is every student mentioned.
CommunityAssignment read_assignment_json(std::istream& in);

/// location<TAB>category per line.
void write_category_map(const CategoryMap& map, std::ostream& out);
CategoryMap read_category_map(std::istream& in);

} // namespace ifsnet
