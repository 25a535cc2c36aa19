#include "koszul/rational.hpp"

#include <stdexcept>

namespace koszul {

Rat parse_rat(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty rational literal");
    mpq_class r;
    if (r.set_str(text, 10) != 0)
        throw std::invalid_argument("malformed rational literal '" + text + "'");
    if (r.get_den() == 0) throw std::invalid_argument("zero denominator in '" + text + "'");
    r.canonicalize();
    return r;
}

std::string rat_str(const Rat& r) { return r.get_str(); }

}  // namespace koszul
