#ifndef QPDAS_WORKING_SET_HPP
#define QPDAS_WORKING_SET_HPP

#include "qpdas/types.hpp"

#include <vector>

namespace qpdas {

/**
 * Set of dual coordinates pinned to zero.
 *
 * The dual vector has m_eq equality multipliers followed by m_in inequality
 * multipliers; only the inequality block [m_eq, m_eq + m_in) may be masked.
 * Indices are kept in ascending order, which is the ordering used for
 * multiplier vectors returned alongside the set.
 */
class WorkingSet
{
public:
  WorkingSet() = default;
  WorkingSet(Index m_eq, Index m_in);

  /// Full dual dimension m_eq + m_in.
  Index dimension() const { return m_eq_ + m_in_; }
  Index m_eq() const { return m_eq_; }
  Index m_in() const { return m_in_; }

  bool in_inequality_range(Index i) const
  {
    return i >= m_eq_ && i < m_eq_ + m_in_;
  }
  bool contains(Index i) const
  {
    return i >= 0 && i < dimension() && member_[static_cast<std::size_t>(i)];
  }

  void insert(Index i);
  void erase(Index i);

  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  const std::vector<Index>& indices() const { return indices_; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }

  /// Position of `i` within indices(), or -1 when not masked.
  Index position(Index i) const;

  bool operator==(const WorkingSet& other) const = default;

private:
  Index m_eq_ = 0;
  Index m_in_ = 0;
  std::vector<Index> indices_;
  std::vector<bool> member_;
};

} // namespace qpdas

#endif // QPDAS_WORKING_SET_HPP
