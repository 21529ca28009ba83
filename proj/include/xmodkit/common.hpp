#pragma once

#include <cstdint>
#include <cstdlib>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace xmodkit {

// Malformed or inconsistent user input (bad Cayley table, non-hom images, ...).
struct input_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A requested computation exceeds the configured size limits.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A condition the library guarantees internally failed; always a bug.
struct internal_check_error : std::logic_error {
    using std::logic_error::logic_error;
};

// Size limits for exhaustive searches. XMODKIT_BUDGET overrides max_enumeration.
struct Budget {
    std::uint64_t max_enumeration = std::uint64_t{1} << 20;
    int max_group_order = 64;
    int max_aut_order = 16;

    static Budget from_env() {
        Budget b;
        if (const char* s = std::getenv("XMODKIT_BUDGET")) {
            char* end = nullptr;
            unsigned long long v = std::strtoull(s, &end, 10);
            if (end && *end == '\0' && v > 0) b.max_enumeration = v;
        }
        return b;
    }
};

// Accumulated axiom violations with witnesses; empty report means valid.
struct ValidationReport {
    struct Item {
        std::string check;
        std::string witness;
    };
    std::vector<Item> items;

    bool ok() const { return items.empty(); }
    void fail(std::string check, std::string witness) {
        items.push_back({std::move(check), std::move(witness)});
    }
    std::string str() const {
        if (items.empty()) return "valid";
        std::string s;
        for (const auto& it : items) {
            s += it.check;
            s += ": ";
            s += it.witness;
            s += '\n';
        }
        return s;
    }
};

using Rng = std::mt19937_64;

}  // namespace xmodkit
