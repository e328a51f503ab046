#pragma once

#include <optional>
#include <vector>

#include "vnfscale/types.hpp"

namespace vnfs {

// A feasible single-server configuration: instance count per type. Patterns
// produced by enumerate_patterns are maximal (no further instance of any
// allowed type fits) and carry a full-length count vector (zeros for types
// outside the allowed set).
struct Pattern {
  std::vector<int> counts;

  bool operator==(const Pattern&) const = default;
};

// A multiset of patterns with multiplicities; covers a demand vector when the
// per-type totals meet or exceed it.
struct Packing {
  std::vector<std::pair<Pattern, int>> assignment;  // (pattern, multiplicity)

  int servers_used() const;
  std::vector<long long> totals(int num_types) const;
};

struct PackOptions {
  // Abort enumeration past this many maximal patterns (guards combinatorial
  // blowup on wide catalogues).
  long long max_patterns = 100000;
};

// All maximal server patterns over the types whose flag is set in `allowed`
// (empty => all types), in ascending lexicographic order of the count vector.
std::vector<Pattern> enumerate_patterns(const std::vector<VnfType>& types,
                                        const Cluster& cluster,
                                        const std::vector<bool>& allowed,
                                        const PackOptions& opts = {});

// Minimum-server cover of `need`: branch-and-bound over maximal patterns.
// Returns nullopt when even cluster.num_servers servers cannot cover the
// demand. The result is deterministic (identical inputs give identical
// packings) and uses the true minimum number of servers.
std::optional<Packing> pack(const DemandVector& need,
                            const std::vector<VnfType>& types,
                            const Cluster& cluster,
                            const PackOptions& opts = {});

// Materialize a packing as a placement over `num_servers` servers; patterns
// fill servers 0,1,... in assignment order, remaining servers stay empty.
Placement to_placement(const Packing& packing, int num_servers, int num_types);

} // namespace vnfs
