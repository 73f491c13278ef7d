#pragma once

#include <cstddef>
#include <deque>

#include "ter/efficiency.hpp"

namespace ter {

// FIFO buffer of the most recent efficiency records, the temporal credit
// assignment window. Holds at most `capacity` entries; pushing onto a full
// window evicts the oldest. Insertion order is preserved.
class WindowMemory {
 public:
  explicit WindowMemory(std::size_t capacity);

  void push(const EfficiencyRecord& record);
  void clear() { entries_.clear(); }

  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  bool empty() const { return entries_.empty(); }

  const std::deque<EfficiencyRecord>& entries() const { return entries_; }

 private:
  std::size_t capacity_;
  std::deque<EfficiencyRecord> entries_;
};

}  // namespace ter
