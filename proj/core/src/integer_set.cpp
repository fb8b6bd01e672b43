#include "friable/integer_set.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "friable/error.hpp"

namespace friable {

IntegerSet::IntegerSet(std::vector<std::uint64_t> elements, std::uint64_t lo,
                       std::uint64_t hi)
    : elements_(std::move(elements)), lo_(lo), hi_(hi) {
  require(lo <= hi, "IntegerSet: window lo > hi");
  std::sort(elements_.begin(), elements_.end());
  elements_.erase(std::unique(elements_.begin(), elements_.end()),
                  elements_.end());
  if (!elements_.empty()) {
    require(elements_.front() >= lo && elements_.back() <= hi,
            "IntegerSet: element outside window [" + std::to_string(lo) +
                ", " + std::to_string(hi) + "]");
  }
}

IntegerSet IntegerSet::from_elements(std::vector<std::uint64_t> elements) {
  if (elements.empty()) return IntegerSet{};
  const auto [mn, mx] = std::minmax_element(elements.begin(), elements.end());
  const std::uint64_t lo = *mn;
  const std::uint64_t hi = *mx;
  return IntegerSet(std::move(elements), lo, hi);
}

bool IntegerSet::contains(std::uint64_t x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

IntegerSet IntegerSet::restrict(std::uint64_t lo, std::uint64_t hi) const {
  require(lo <= hi, "restrict: lo > hi");
  auto first = std::lower_bound(elements_.begin(), elements_.end(), lo);
  auto last = std::upper_bound(first, elements_.end(), hi);
  return IntegerSet(std::vector<std::uint64_t>(first, last), lo, hi);
}

void IntegerSet::write_text(std::ostream& os) const {
  os << "# window " << lo_ << ' ' << hi_ << '\n';
  for (auto x : elements_) os << x << '\n';
}

IntegerSet IntegerSet::read_text(std::istream& is) {
  std::string line;
  std::optional<std::pair<std::uint64_t, std::uint64_t>> window;
  std::vector<std::uint64_t> values;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      std::istringstream hs(line.substr(1));
      std::string word;
      std::uint64_t lo = 0, hi = 0;
      if (hs >> word && word == "window" && hs >> lo >> hi) {
        window.emplace(lo, hi);
      }
      continue;
    }
    std::istringstream ls(line);
    std::uint64_t v = 0;
    std::string rest;
    if (!(ls >> v) || (ls >> rest)) {
      throw ContractViolation("IntegerSet text: bad integer on line " +
                              std::to_string(lineno));
    }
    values.push_back(v);
  }
  if (!window) return from_elements(std::move(values));
  return IntegerSet(std::move(values), window->first, window->second);
}

}  // namespace friable
