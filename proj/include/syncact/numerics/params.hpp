#pragma once

#include <string>
#include <vector>

#include "syncact/matrix.hpp"

namespace syncact::numerics {

// Non-owning handle to one trainable tensor. Models expose their parameters as
// an ordered list; a gradient object of the same type yields a list that lines
// up entry for entry.
struct NamedParam {
  std::string name;
  Matrix* value = nullptr;
};

using ParamList = std::vector<NamedParam>;

inline void append_params(ParamList& out, const ParamList& more) {
  out.insert(out.end(), more.begin(), more.end());
}

}  // namespace syncact::numerics
