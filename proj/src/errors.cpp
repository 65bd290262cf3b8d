#include "eqcat/errors.hpp"

namespace eqcat {

namespace {

std::string join_witness(const std::vector<int>& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(w[i]);
    }
    return s + ")";
}

}  // namespace

NotAGroup::NotAGroup(std::string axiom, std::vector<int> witness)
    : Error("not a group: " + axiom + " fails at " + join_witness(witness)),
      axiom_(std::move(axiom)),
      witness_(std::move(witness)) {}

NotAHomomorphism::NotAHomomorphism(int g, int h)
    : Error("not a homomorphism: fails at (" + std::to_string(g) + "," + std::to_string(h) + ")"),
      g_(g),
      h_(h) {}

NotACategory::NotACategory(std::string axiom, std::vector<int> witness)
    : Error("not a category: " + axiom + " fails at " + join_witness(witness)),
      axiom_(std::move(axiom)),
      witness_(std::move(witness)) {}

}  // namespace eqcat
