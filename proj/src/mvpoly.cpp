#include "ffzeta/mvpoly.hpp"

namespace ffz::mv {

std::vector<std::string> t_vars(std::size_t s, bool with_z) {
  std::vector<std::string> v;
  v.reserve(s + 1);
  for (std::size_t i = 1; i <= s; ++i) v.push_back("t" + std::to_string(i));
  if (with_z) v.push_back("z");
  return v;
}

}  // namespace ffz::mv
