#ifndef SNDG_NATURAL_ORDER_H_
#define SNDG_NATURAL_ORDER_H_

#include <string_view>

namespace sndg {

// Orders identifiers so that embedded digit runs compare numerically
// ("e2" < "e10"). Falls back to plain byte order, so the order is total.
bool NaturalLess(std::string_view a, std::string_view b);

}  // namespace sndg

#endif  // SNDG_NATURAL_ORDER_H_
