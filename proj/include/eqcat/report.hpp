#pragma once

#include <cstdint>
#include <deque>
#include <string>
#include <vector>

namespace eqcat {

// Outcome of checking one law over a family of instances.
struct LawResult {
    std::string law;
    bool pass = true;
    std::uint64_t checked = 0;  // instances checked exhaustively
    std::uint64_t sampled = 0;  // instances drawn at random from over-budget families
    std::string witness;        // first failing instance, if any
};

struct LawReport {
    std::deque<LawResult> laws;  // law() hands out references that must stay valid

    bool pass() const;
    LawResult& law(const std::string& name);
    void merge(const LawReport& other);
};

// One line per law: "PASS name checked=N" or "FAIL name ... witness: ...".
std::string report_text(const LawReport& r);
std::string report_json(const LawReport& r);

}  // namespace eqcat
