#pragma once

#include <stdexcept>
#include <string>

namespace maxcurve {

// Error categories raised by the library. Kept as a single exception type
// with a code so callers (and tests) can match on the category without a
// class per condition.
enum class errc {
    not_prime,            // p failed a primality check
    degree_overflow,      // field would not fit the 32-bit index space
    n_is_even,            // tower exponent n must be odd
    bad_param,            // precondition violated (divisibility, range, ...)
    division_by_zero,     // field or polynomial division by zero
    ctx_mismatch,         // elements from different field contexts combined
    not_a_subfield,       // k does not divide the extension degree
    zero_input,           // operation undefined at zero
    d_not_divisor,        // d must divide Q-1 for residue/root queries
    wild_ramification,    // Kummer machinery requires gcd(k, p) = 1
    support_inconsistent, // declared divisor support disagrees with f
    resource_limit,       // run would exceed the configured resource bound
};

inline const char* errc_name(errc c) {
    switch (c) {
    case errc::not_prime: return "not_prime";
    case errc::degree_overflow: return "degree_overflow";
    case errc::n_is_even: return "n_is_even";
    case errc::bad_param: return "bad_param";
    case errc::division_by_zero: return "division_by_zero";
    case errc::ctx_mismatch: return "ctx_mismatch";
    case errc::not_a_subfield: return "not_a_subfield";
    case errc::zero_input: return "zero_input";
    case errc::d_not_divisor: return "d_not_divisor";
    case errc::wild_ramification: return "wild_ramification";
    case errc::support_inconsistent: return "support_inconsistent";
    case errc::resource_limit: return "resource_limit";
    }
    return "unknown";
}

class MathError : public std::runtime_error {
public:
    MathError(errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void raise(errc code, const std::string& what) {
    throw MathError(code, what);
}

} // namespace maxcurve
