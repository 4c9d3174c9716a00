// Copyright 2026 The otgeo Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// Transportation simplex: the network simplex method specialised to the
// complete bipartite graph of a discrete OT problem. A basis is a spanning
// tree of n + k - 1 cells over the n row nodes and k column nodes.

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <vector>

#include "otgeo/error.hpp"
#include "otgeo/ot.hpp"

namespace otgeo {

namespace {

// Flows below this are roundoff residue from pivoting and are dropped.
constexpr double kFlowEpsilon = 1e-14;

class TransportationSimplex {
 public:
  TransportationSimplex(const Eigen::MatrixXd& cost, const Eigen::VectorXd& supply,
                        const Eigen::VectorXd& demand)
      : cost_(cost),
        n_(cost.rows()),
        k_(cost.cols()),
        adjacency_(static_cast<std::size_t>(n_ + k_)),
        row_potential_(n_),
        col_potential_(k_),
        parent_cell_(static_cast<std::size_t>(n_ + k_)) {
    const double scale = cost.cwiseAbs().maxCoeff();
    tolerance_ = 1e-12 * scale;
    const Eigen::Index cells = n_ * k_;
    block_size_ = std::max<Eigen::Index>(
        std::min<Eigen::Index>(cells, 64),
        static_cast<Eigen::Index>(std::sqrt(static_cast<double>(cells))));
    northwest_corner(supply, demand);
  }

  int solve() {
    const long max_pivots = 50L * n_ * k_ + 1000;
    long consecutive_degenerate = 0;
    bool bland = false;
    for (long pivots = 0;; ++pivots) {
      if (pivots > max_pivots) {
        throw Error(ErrorCode::kNoConvergence,
                    "transportation simplex exceeded " +
                        std::to_string(max_pivots) + " pivots");
      }
      compute_potentials();
      const Eigen::Index entering = bland ? first_negative() : block_search();
      if (entering < 0) return static_cast<int>(pivots);
      const double theta = pivot(entering, bland);
      if (theta > 0.0) {
        consecutive_degenerate = 0;
        bland = false;
      } else if (++consecutive_degenerate > n_ + k_) {
        // Bland's rule cannot cycle; fall back to it on long degenerate runs.
        bland = true;
      }
    }
  }

  Eigen::MatrixXd plan() const {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n_, k_);
    for (const auto& c : basis_) {
      if (c.flow > kFlowEpsilon) p(c.row, c.col) = c.flow;
    }
    return p;
  }

 private:
  struct Cell {
    Eigen::Index row;
    Eigen::Index col;
    double flow;
  };

  std::size_t row_node(Eigen::Index i) const { return static_cast<std::size_t>(i); }
  std::size_t col_node(Eigen::Index j) const { return static_cast<std::size_t>(n_ + j); }

  void add_cell(Eigen::Index i, Eigen::Index j, double flow) {
    const int id = static_cast<int>(basis_.size());
    basis_.push_back({i, j, flow});
    adjacency_[row_node(i)].push_back(id);
    adjacency_[col_node(j)].push_back(id);
  }

  void northwest_corner(const Eigen::VectorXd& supply, const Eigen::VectorXd& demand) {
    basis_.reserve(static_cast<std::size_t>(n_ + k_ - 1));
    Eigen::Index i = 0;
    Eigen::Index j = 0;
    double s = supply[0];
    double d = demand[0];
    for (;;) {
      const double x = std::max(0.0, std::min(s, d));
      add_cell(i, j, x);
      const bool row_done = s <= d;
      s -= x;
      d -= x;
      if (i == n_ - 1 && j == k_ - 1) break;
      if (j == k_ - 1 || (i < n_ - 1 && row_done)) {
        ++i;
        s = supply[i];
      } else {
        ++j;
        d = demand[j];
      }
    }
  }

  void compute_potentials() {
    std::vector<char> seen(static_cast<std::size_t>(n_ + k_), 0);
    std::deque<std::size_t> queue{row_node(0)};
    seen[0] = 1;
    row_potential_[0] = 0.0;
    while (!queue.empty()) {
      const auto node = queue.front();
      queue.pop_front();
      for (const int id : adjacency_[node]) {
        const auto& c = basis_[static_cast<std::size_t>(id)];
        const double cij = cost_(c.row, c.col);
        if (node == row_node(c.row)) {
          const auto other = col_node(c.col);
          if (!seen[other]) {
            seen[other] = 1;
            col_potential_[c.col] = cij - row_potential_[c.row];
            queue.push_back(other);
          }
        } else {
          const auto other = row_node(c.row);
          if (!seen[other]) {
            seen[other] = 1;
            row_potential_[c.row] = cij - col_potential_[c.col];
            queue.push_back(other);
          }
        }
      }
    }
  }

  // Cells are addressed by their column-major offset into the cost matrix.
  double reduced_cost(Eigen::Index cell) const {
    const Eigen::Index i = cell % n_;
    const Eigen::Index j = cell / n_;
    return cost_.data()[cell] - row_potential_[i] - col_potential_[j];
  }

  Eigen::Index block_search() {
    const Eigen::Index cells = n_ * k_;
    Eigen::Index best = -1;
    double best_value = -tolerance_;
    Eigen::Index scanned_in_block = 0;
    for (Eigen::Index count = 0; count < cells; ++count) {
      const Eigen::Index cell = next_cell_;
      next_cell_ = next_cell_ + 1 == cells ? 0 : next_cell_ + 1;
      const double r = reduced_cost(cell);
      if (r < best_value) {
        best_value = r;
        best = cell;
      }
      if (++scanned_in_block == block_size_) {
        if (best >= 0) return best;
        scanned_in_block = 0;
      }
    }
    return best;
  }

  Eigen::Index first_negative() const {
    const Eigen::Index cells = n_ * k_;
    for (Eigen::Index cell = 0; cell < cells; ++cell) {
      if (reduced_cost(cell) < -tolerance_) return cell;
    }
    return -1;
  }

  // Tree path from column node of the entering cell back to its row node,
  // as basis cell ids ordered from the column end.
  std::vector<int> tree_path(Eigen::Index row, Eigen::Index col) {
    std::fill(parent_cell_.begin(), parent_cell_.end(), -2);
    std::deque<std::size_t> queue{row_node(row)};
    parent_cell_[row_node(row)] = -1;
    const auto target = col_node(col);
    while (!queue.empty() && parent_cell_[target] == -2) {
      const auto node = queue.front();
      queue.pop_front();
      for (const int id : adjacency_[node]) {
        const auto& c = basis_[static_cast<std::size_t>(id)];
        const auto other = node == row_node(c.row) ? col_node(c.col) : row_node(c.row);
        if (parent_cell_[other] == -2) {
          parent_cell_[other] = id;
          queue.push_back(other);
        }
      }
    }
    std::vector<int> path;
    auto node = target;
    while (parent_cell_[node] != -1) {
      const int id = parent_cell_[node];
      path.push_back(id);
      const auto& c = basis_[static_cast<std::size_t>(id)];
      node = node == col_node(c.col) ? row_node(c.row) : col_node(c.col);
    }
    return path;
  }

  double pivot(Eigen::Index entering, bool bland) {
    const Eigen::Index ei = entering % n_;
    const Eigen::Index ej = entering / n_;
    const auto path = tree_path(ei, ej);
    // Cells at even positions lose flow, odd positions gain it.
    std::size_t leaving_pos = 0;
    double theta = basis_[static_cast<std::size_t>(path[0])].flow;
    for (std::size_t p = 2; p < path.size(); p += 2) {
      const auto& c = basis_[static_cast<std::size_t>(path[p])];
      const auto& best = basis_[static_cast<std::size_t>(path[leaving_pos])];
      const bool better =
          c.flow < theta ||
          (bland && c.flow == theta &&
           c.col * n_ + c.row < best.col * n_ + best.row);
      if (better) {
        theta = c.flow;
        leaving_pos = p;
      }
    }
    for (std::size_t p = 0; p < path.size(); ++p) {
      auto& c = basis_[static_cast<std::size_t>(path[p])];
      c.flow = p % 2 == 0 ? c.flow - theta : c.flow + theta;
    }
    const int leaving = path[leaving_pos];
    auto& out = basis_[static_cast<std::size_t>(leaving)];
    detach(row_node(out.row), leaving);
    detach(col_node(out.col), leaving);
    out = {ei, ej, theta};
    adjacency_[row_node(ei)].push_back(leaving);
    adjacency_[col_node(ej)].push_back(leaving);
    return theta;
  }

  void detach(std::size_t node, int id) {
    auto& adj = adjacency_[node];
    adj.erase(std::find(adj.begin(), adj.end(), id));
  }

  const Eigen::MatrixXd& cost_;
  Eigen::Index n_;
  Eigen::Index k_;
  std::vector<Cell> basis_;
  std::vector<std::vector<int>> adjacency_;
  Eigen::VectorXd row_potential_;
  Eigen::VectorXd col_potential_;
  std::vector<int> parent_cell_;
  double tolerance_ = 0.0;
  Eigen::Index block_size_ = 1;
  Eigen::Index next_cell_ = 0;
};

void check_weights(const Eigen::VectorXd& w, Eigen::Index expected, const char* name) {
  if (w.size() != expected) {
    throw Error(ErrorCode::kShapeMismatch,
                std::string(name) + " has " + std::to_string(w.size()) +
                    " entries, expected " + std::to_string(expected));
  }
  if (!w.allFinite() || w.minCoeff() < 0.0 || std::abs(w.sum() - 1.0) > 1e-9) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(name) + " must be a probability vector");
  }
}

}  // namespace

TransportResult exact_ot(const CostMatrix& cost, const Eigen::VectorXd& mu,
                         const Eigen::VectorXd& nu, const ExactOtConfig& cfg) {
  const auto cells = static_cast<std::size_t>(cost.rows() * cost.cols());
  if (cells > cfg.max_cells) {
    throw Error(ErrorCode::kProblemTooLarge,
                std::to_string(cost.rows()) + "x" + std::to_string(cost.cols()) +
                    " exceeds the exact solver cap of " +
                    std::to_string(cfg.max_cells) + " cells");
  }
  check_weights(mu, cost.rows(), "mu");
  check_weights(nu, cost.cols(), "nu");

  TransportResult result;
  TransportationSimplex simplex(cost.values(), mu, nu);
  result.iterations = simplex.solve();
  Eigen::MatrixXd plan = simplex.plan();
  result.cost = cost.values().cwiseProduct(plan).sum();
  result.coupling = Coupling{std::move(plan), mu, nu};
  return result;
}

}  // namespace otgeo
