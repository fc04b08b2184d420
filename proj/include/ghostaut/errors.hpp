#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ghostaut {

struct NotAGroup : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Disconnected : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotCotree : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnstableSet : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// cover data violating the surface relation, orders, branch matching, ...
struct IllFormed : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NotAbelian : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BudgetExceeded : std::runtime_error {
    BudgetExceeded(const std::string& what, std::uint64_t requested, std::uint64_t cap)
        : std::runtime_error(what), requested(requested), cap(cap) {}
    std::uint64_t requested;
    std::uint64_t cap;
};

}  // namespace ghostaut
