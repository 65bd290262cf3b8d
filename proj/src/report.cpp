#include "eqcat/report.hpp"

#include <algorithm>

#include <json.hpp>

namespace eqcat {

bool LawReport::pass() const {
    return std::all_of(laws.begin(), laws.end(), [](const LawResult& l) { return l.pass; });
}

LawResult& LawReport::law(const std::string& name) {
    for (auto& l : laws)
        if (l.law == name) return l;
    laws.push_back(LawResult{name, true, 0, 0, {}});
    return laws.back();
}

void LawReport::merge(const LawReport& other) {
    for (const auto& o : other.laws) {
        auto& l = law(o.law);
        l.checked += o.checked;
        l.sampled += o.sampled;
        if (!o.pass && l.pass) {
            l.pass = false;
            l.witness = o.witness;
        }
    }
}

std::string report_text(const LawReport& r) {
    std::string out;
    for (const auto& l : r.laws) {
        out += (l.pass ? "PASS " : "FAIL ") + l.law + " checked=" + std::to_string(l.checked);
        if (l.sampled) out += " sampled=" + std::to_string(l.sampled);
        if (!l.pass) out += " witness: " + l.witness;
        out += '\n';
    }
    return out;
}

std::string report_json(const LawReport& r) {
    nlohmann::json laws = nlohmann::json::array();
    for (const auto& l : r.laws) {
        nlohmann::json j{{"law", l.law}, {"pass", l.pass}, {"checked", l.checked}, {"sampled", l.sampled}};
        if (!l.pass) j["witness"] = l.witness;
        laws.push_back(std::move(j));
    }
    return nlohmann::json{{"pass", r.pass()}, {"laws", laws}}.dump(2);
}

}  // namespace eqcat
