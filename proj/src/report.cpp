#include "koszul/report.hpp"

#include <sstream>

namespace koszul {

void Report::put(const std::string& key, const std::string& value) {
    fields_.emplace_back(key, value);
}

void Report::put(const std::string& key, long value) { put(key, std::to_string(value)); }

void Report::put(const std::string& key, const RatVec& value) {
    std::string s;
    for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) s += " ";
        s += rat_str(value[i]);
    }
    put(key, s.empty() ? "-" : s);
}

void Report::put_matrix(const std::string& key, const RationalMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) put(key + "." + std::to_string(i), m.row(i));
    if (m.rows() == 0) put(key, "(empty)");
}

void Report::check(const std::string& name, bool pass, const std::string& witness) {
    if (!pass) ++failed_;
    std::string v = pass ? "pass" : "fail";
    if (!pass && !witness.empty()) v += " (" + witness + ")";
    fields_.emplace_back("check " + name, v);
}

void Report::check_state(const std::string& name, const std::string& state) {
    fields_.emplace_back("check " + name, state);
}

std::string Report::str() const {
    std::ostringstream os;
    for (const auto& [k, v] : fields_) os << k << " = " << v << "\n";
    return os.str();
}

}  // namespace koszul
