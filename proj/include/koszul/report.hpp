#pragma once

#include <string>
#include <vector>

#include "koszul/matrix.hpp"

namespace koszul {

// Ordered key-value document with stable field order; rationals serialize as
// p/q.  Byte-identical across runs and thread counts for identical inputs.
class Report {
  public:
    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, long value);
    void put(const std::string& key, bool value) { put(key, std::string(value ? "yes" : "no")); }
    void put(const std::string& key, const Rat& value) { put(key, rat_str(value)); }
    void put(const std::string& key, const RatVec& value);
    void put_matrix(const std::string& key, const RationalMatrix& m);

    // pass | fail | indeterminate-to-cap, tallied into the exit state
    void check(const std::string& name, bool pass, const std::string& witness = "");
    void check_state(const std::string& name, const std::string& state);

    bool all_checks_pass() const { return failed_ == 0; }
    std::string str() const;

  private:
    std::vector<std::pair<std::string, std::string>> fields_;
    int failed_ = 0;
};

}  // namespace koszul
