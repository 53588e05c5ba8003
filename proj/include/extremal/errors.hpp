#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace extremal {

// A caller-supplied parameter is outside the operation's domain.
class InvalidParam : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A factor |1 - conj(z_j) z_k| vanished exactly, so the log-product is -inf.
// For diagonal factors j == k.
class DegenerateFactor : public std::domain_error {
 public:
  DegenerateFactor(std::size_t j, std::size_t k)
      : std::domain_error("degenerate factor |1 - conj(z_" + std::to_string(j) +
                          ") z_" + std::to_string(k) + "| = 0"),
        j_(j),
        k_(k) {}

  std::size_t j() const noexcept { return j_; }
  std::size_t k() const noexcept { return k_; }

 private:
  std::size_t j_;
  std::size_t k_;
};

// Evaluation point too close to the pole 1/conj(z_j).
class PoleProximity : public std::domain_error {
 public:
  explicit PoleProximity(std::size_t index)
      : std::domain_error("evaluation point within 1e-14 of the pole of factor " +
                          std::to_string(index)),
        index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Adaptive circle quadrature ran past its node budget.
class NoConvergence : public std::runtime_error {
 public:
  NoConvergence(std::size_t node_count, double last_difference)
      : std::runtime_error("circle quadrature did not converge with " +
                           std::to_string(node_count) + " nodes (last difference " +
                           std::to_string(last_difference) + ")"),
        node_count_(node_count),
        last_difference_(last_difference) {}

  std::size_t node_count() const noexcept { return node_count_; }
  double last_difference() const noexcept { return last_difference_; }

 private:
  std::size_t node_count_;
  double last_difference_;
};

}  // namespace extremal
