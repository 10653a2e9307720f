#pragma once

#include <gmpxx.h>
#include <optional>
#include <stdexcept>
#include <string>

namespace khall {

using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

// Accepts "a" or "a/b".
inline Rat parse_rat(const std::string& s) {
    try {
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw std::runtime_error("bad rational: '" + s + "'");
    }
}

inline std::string rat_str(const Rat& r) { return r.get_str(); }

inline bool is_integer(const Rat& r) { return r.get_den() == 1; }

inline long to_long(const Rat& r) {
    if (!is_integer(r)) throw std::runtime_error("not an integer: " + rat_str(r));
    if (!r.get_num().fits_slong_p()) throw std::runtime_error("integer overflow: " + rat_str(r));
    return r.get_num().get_si();
}

} // namespace khall
