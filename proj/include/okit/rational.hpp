#pragma once

#include <gmpxx.h>
#include <string>
#include <vector>

namespace okit {

/// Exact rational scalar. All arithmetic in the engine runs over these;
/// no floating point anywhere.
using Rat = mpq_class;

inline bool is_zero(const Rat& q) { return sgn(q) == 0; }
inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string to_string(const Rat& q) { return q.get_str(); }

inline Rat rat_from_string(const std::string& s) {
  Rat q(s);
  q.canonicalize();
  return q;
}

using RatVec = std::vector<Rat>;

}  // namespace okit
