#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace eqcat {

// Base of every error the library raises on invalid input.  The CLI maps
// these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class NotAGroup : public Error {
public:
    NotAGroup(std::string axiom, std::vector<int> witness);
    const std::string& axiom() const { return axiom_; }
    const std::vector<int>& witness() const { return witness_; }

private:
    std::string axiom_;
    std::vector<int> witness_;
};

class NotAHomomorphism : public Error {
public:
    NotAHomomorphism(int g, int h);
    int first() const { return g_; }
    int second() const { return h_; }

private:
    int g_;
    int h_;
};

class NotACategory : public Error {
public:
    NotACategory(std::string axiom, std::vector<int> witness);
    const std::string& axiom() const { return axiom_; }
    const std::vector<int>& witness() const { return witness_; }

private:
    std::string axiom_;
    std::vector<int> witness_;
};

#define EQCAT_SIMPLE_ERROR(Name)      \
    class Name : public Error {       \
    public:                           \
        using Error::Error;           \
    };

EQCAT_SIMPLE_ERROR(GroupMismatch)
EQCAT_SIMPLE_ERROR(NotASubgroup)
EQCAT_SIMPLE_ERROR(SizeBudgetExceeded)
EQCAT_SIMPLE_ERROR(ActionNotFree)
EQCAT_SIMPLE_ERROR(NotAGroupoid)
EQCAT_SIMPLE_ERROR(NotInjective)
EQCAT_SIMPLE_ERROR(ShapeMismatch)
EQCAT_SIMPLE_ERROR(UnknownCommand)
EQCAT_SIMPLE_ERROR(DomainShapeMismatch)
EQCAT_SIMPLE_ERROR(EquivalenceFailure)

#undef EQCAT_SIMPLE_ERROR

}  // namespace eqcat
