#include "qpdas/working_set.hpp"

#include "qpdas/errors.hpp"

#include <algorithm>
#include <string>

namespace qpdas {

WorkingSet::WorkingSet(Index m_eq, Index m_in)
  : m_eq_(m_eq)
  , m_in_(m_in)
  , member_(static_cast<std::size_t>(m_eq + m_in), false)
{
  if (m_eq < 0 || m_in < 0)
    throw InvalidInput("working set: negative block size");
}

void
WorkingSet::insert(Index i)
{
  if (!in_inequality_range(i))
    throw PreconditionError("working set: index " + std::to_string(i) +
                            " is not an inequality index");
  if (contains(i))
    throw PreconditionError("working set: index " + std::to_string(i) +
                            " is already masked");
  indices_.insert(std::lower_bound(indices_.begin(), indices_.end(), i), i);
  member_[static_cast<std::size_t>(i)] = true;
}

void
WorkingSet::erase(Index i)
{
  if (!contains(i))
    throw PreconditionError("working set: index " + std::to_string(i) +
                            " is not masked");
  indices_.erase(std::lower_bound(indices_.begin(), indices_.end(), i));
  member_[static_cast<std::size_t>(i)] = false;
}

Index
WorkingSet::position(Index i) const
{
  if (!contains(i))
    return -1;
  return std::lower_bound(indices_.begin(), indices_.end(), i) -
         indices_.begin();
}

} // namespace qpdas
