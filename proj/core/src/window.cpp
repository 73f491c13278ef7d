#include "ter/window.hpp"

#include <stdexcept>

namespace ter {

WindowMemory::WindowMemory(std::size_t capacity) : capacity_(capacity) {
  if (capacity == 0) throw std::invalid_argument("window capacity must be at least 1");
}

void WindowMemory::push(const EfficiencyRecord& record) {
  if (entries_.size() == capacity_) entries_.pop_front();
  entries_.push_back(record);
}

}  // namespace ter
