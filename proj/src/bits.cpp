#include "ordyn/bits.hpp"

namespace ordyn {

std::vector<int> points_of(PointSet s) {
  std::vector<int> out;
  out.reserve(count(s));
  for_each_point(s, [&](int x) { out.push_back(x); });
  return out;
}

PointSet set_of(const std::vector<int>& pts) {
  PointSet s = 0;
  for (int x : pts) s |= singleton(x);
  return s;
}

std::vector<std::size_t> members(const ElemSet& s) {
  std::vector<std::size_t> out;
  for (auto i = s.find_first(); i != ElemSet::npos; i = s.find_next(i)) out.push_back(i);
  return out;
}

std::string format_set(PointSet s, const std::vector<std::string>& names) {
  std::string out = "{";
  bool first = true;
  for_each_point(s, [&](int x) {
    if (!first) out += ",";
    first = false;
    out += static_cast<std::size_t>(x) < names.size() ? names[x] : std::to_string(x);
  });
  return out + "}";
}

}  // namespace ordyn
