#include "dgc/core.hpp"

namespace dgc {

PartialTable::PartialTable(std::vector<Id> end, std::vector<Id> start, int anchors)
    : end_(std::move(end)), start_(std::move(start)) {
  by_start_.assign(anchors, {});
  pos_.assign(start_.size(), 0);
  for (Id b = 0; b < static_cast<Id>(start_.size()); ++b) {
    pos_[b] = static_cast<Id>(by_start_[start_[b]].size());
    by_start_[start_[b]].push_back(b);
  }
  off_.assign(end_.size(), 0);
  std::size_t total = 0;
  for (std::size_t a = 0; a < end_.size(); ++a) {
    off_[a] = total;
    total += by_start_[end_[a]].size();
  }
  data_.assign(total, kNone);
}

}  // namespace dgc
