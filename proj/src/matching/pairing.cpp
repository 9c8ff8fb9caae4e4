#include <cmath>
#include <string>

#include "syncact/errors.hpp"
#include "syncact/matching.hpp"

namespace syncact::matching {

std::string_view direction_name(Direction d) {
  return d == Direction::kFbnToFilter ? "fbn-to-filter" : "filter-to-fbn";
}

Direction parse_direction(std::string_view text) {
  if (text == "fbn-to-filter") return Direction::kFbnToFilter;
  if (text == "filter-to-fbn") return Direction::kFilterToFbn;
  throw InputError("unknown direction '" + std::string(text) +
                   "' (expected fbn-to-filter or filter-to-fbn)");
}

std::string PairingResult::ratio() const {
  return std::to_string(nonsignificant) + "/" + std::to_string(pairs.size());
}

PairingResult pair_neurons(const CorrelationMatrix& c, Direction direction, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("alpha must lie in (0, 1)");
  const bool rows_are_sources = direction == Direction::kFbnToFilter;
  const std::size_t sources = rows_are_sources ? c.r.rows() : c.r.cols();
  const std::size_t targets = rows_are_sources ? c.r.cols() : c.r.rows();
  auto cell_r = [&](std::size_t s, std::size_t t) { return rows_are_sources ? c.r(s, t) : c.r(t, s); };
  auto cell_p = [&](std::size_t s, std::size_t t) { return rows_are_sources ? c.p(s, t) : c.p(t, s); };

  PairingResult result;
  result.direction = direction;
  result.alpha = alpha;
  double total = 0.0;
  std::size_t paired = 0;
  for (std::size_t s = 0; s < sources; ++s) {
    NeuronPair pair{s, 0, std::nan(""), std::nan(""), false};
    for (std::size_t t = 0; t < targets; ++t) {
      const double r = cell_r(s, t);
      if (std::isnan(r)) continue;
      if (!pair.paired || r > pair.r) pair = {s, t, r, cell_p(s, t), true};
    }
    if (pair.paired) {
      total += pair.r;
      ++paired;
      if (!(pair.p <= alpha)) ++result.nonsignificant;
    } else {
      ++result.unpaired;
      ++result.nonsignificant;
    }
    result.pairs.push_back(pair);
  }
  result.mean_r = paired == 0 ? std::nan("") : total / double(paired);
  return result;
}

}  // namespace syncact::matching
