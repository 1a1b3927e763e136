#include "rilsim/graph.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "rilsim/errors.hpp"

namespace rilsim {

namespace {
constexpr int kUnreached = std::numeric_limits<int>::max();
}

CommunityGraph CommunityGraph::build(
    std::vector<std::string> communities,
    const std::vector<std::pair<std::string, std::string>>& edges,
    std::map<std::string, std::string> court_placement) {
  CommunityGraph g;
  g.communities_ = std::move(communities);
  for (std::size_t i = 0; i < g.communities_.size(); ++i) {
    auto [it, inserted] = g.index_.emplace(g.communities_[i], static_cast<int>(i));
    if (!inserted)
      throw Error(ErrorCode::ScenarioInvalid,
                  "duplicate community id '" + g.communities_[i] + "'");
  }
  if (g.communities_.empty())
    throw Error(ErrorCode::ScenarioInvalid, "graph has no communities");

  const int n = static_cast<int>(g.communities_.size());
  std::vector<std::vector<int>> adjacency(n);
  g.degree_.assign(n, 0);
  for (const auto& [a, b] : edges) {
    auto ia = g.index_.find(a);
    auto ib = g.index_.find(b);
    if (ia == g.index_.end())
      throw Error(ErrorCode::ScenarioInvalid, "edge references unknown community '" + a + "'");
    if (ib == g.index_.end())
      throw Error(ErrorCode::ScenarioInvalid, "edge references unknown community '" + b + "'");
    if (ia->second == ib->second)
      throw Error(ErrorCode::ScenarioInvalid, "self-loop on community '" + a + "'");
    adjacency[ia->second].push_back(ib->second);
    adjacency[ib->second].push_back(ia->second);
  }
  for (int i = 0; i < n; ++i) {
    auto& nbrs = adjacency[i];
    std::sort(nbrs.begin(), nbrs.end());
    nbrs.erase(std::unique(nbrs.begin(), nbrs.end()), nbrs.end());
    g.degree_[i] = static_cast<int>(nbrs.size());
    g.max_degree_ = std::max(g.max_degree_, g.degree_[i]);
  }

  // BFS from every community; also establishes connectivity and diameter.
  g.dist_.assign(n, std::vector<int>(n, kUnreached));
  for (int s = 0; s < n; ++s) {
    auto& dist = g.dist_[s];
    dist[s] = 0;
    std::deque<int> queue{s};
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      for (int v : adjacency[u]) {
        if (dist[v] == kUnreached) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
    for (int t = 0; t < n; ++t) {
      if (dist[t] == kUnreached)
        throw Error(ErrorCode::ScenarioInvalid,
                    "graph is disconnected: community '" + g.communities_[t] +
                        "' is unreachable from '" + g.communities_[s] + "'");
      g.diameter_ = std::max(g.diameter_, dist[t]);
    }
  }

  for (const auto& [court, community] : court_placement) {
    if (!g.index_.contains(community))
      throw Error(ErrorCode::ScenarioInvalid, "court '" + court +
                                                  "' placed in unknown community '" +
                                                  community + "'");
  }
  g.court_placement_ = std::move(court_placement);
  return g;
}

bool CommunityGraph::has_community(std::string_view id) const {
  return index_.find(id) != index_.end();
}

int CommunityGraph::index_of(std::string_view community) const {
  auto it = index_.find(community);
  if (it == index_.end())
    throw Error(ErrorCode::InvalidInput,
                "unknown community '" + std::string(community) + "'");
  return it->second;
}

int CommunityGraph::distance(std::string_view c1, std::string_view c2) const {
  return dist_[index_of(c1)][index_of(c2)];
}

std::optional<std::string> CommunityGraph::community_of_court(
    std::string_view court_id) const {
  auto it = court_placement_.find(std::string(court_id));
  if (it == court_placement_.end()) return std::nullopt;
  return it->second;
}

double CommunityGraph::centrality(std::string_view community) const {
  const int idx = index_of(community);
  if (max_degree_ == 0) return 1.0;  // single-community graph
  return static_cast<double>(degree_[idx]) / max_degree_;
}

std::map<std::string, double> CommunityGraph::centrality_map() const {
  std::map<std::string, double> out;
  for (const auto& c : communities_) out.emplace(c, centrality(c));
  return out;
}

std::set<std::string> CommunityGraph::mainstream(double theta) const {
  std::set<std::string> out;
  for (const auto& c : communities_)
    if (centrality(c) > theta) out.insert(c);
  return out;
}

int community_distance(const CommunityGraph& graph, std::string_view c1,
                       std::string_view c2) {
  return graph.distance(c1, c2);
}

}  // namespace rilsim
