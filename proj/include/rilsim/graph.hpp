#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rilsim {

// Undirected community graph with court placement. Distances are hop counts
// ("logical" distance between communities, not metric distance); the full
// all-pairs table is precomputed at construction since community counts stay
// small even at scale.
class CommunityGraph {
 public:
  /// Throws Error(ScenarioInvalid) on unknown ids, self-loops, duplicate
  /// communities, courts placed in unknown communities, or a disconnected
  /// graph (the diagnostic names an unreachable community).
  static CommunityGraph build(
      std::vector<std::string> communities,
      const std::vector<std::pair<std::string, std::string>>& edges,
      std::map<std::string, std::string> court_placement);

  const std::vector<std::string>& communities() const { return communities_; }
  bool has_community(std::string_view id) const;

  /// Shortest-path hop count; distance(c, c) = 0.
  int distance(std::string_view c1, std::string_view c2) const;
  int diameter() const { return diameter_; }

  std::optional<std::string> community_of_court(std::string_view court_id) const;

  /// Normalized degree centrality: degree(c) / max_degree, in (0, 1] for a
  /// connected graph.
  double centrality(std::string_view community) const;
  std::map<std::string, double> centrality_map() const;

  /// Communities whose centrality strictly exceeds theta.
  std::set<std::string> mainstream(double theta) const;

  /// Empty placeholder; every query on it throws. Use build().
  CommunityGraph() = default;

 private:
  int index_of(std::string_view community) const;

  std::vector<std::string> communities_;
  std::map<std::string, int, std::less<>> index_;
  std::vector<int> degree_;
  int max_degree_ = 0;
  std::vector<std::vector<int>> dist_;
  int diameter_ = 0;
  std::map<std::string, std::string> court_placement_;
};

/// Spec-shaped wrapper.
int community_distance(const CommunityGraph& graph, std::string_view c1,
                       std::string_view c2);

}  // namespace rilsim
