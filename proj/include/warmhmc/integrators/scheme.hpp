#pragma once

#include <string>

#include "warmhmc/core/errors.hpp"

namespace warmhmc {

// Unadjusted single-step schemes shared by the chain drivers and the
// exact-law propagation.
enum class Scheme { obabo, obabco, oho };

inline const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::obabo: return "obabo";
        case Scheme::obabco: return "obabco";
        case Scheme::oho: return "oho";
    }
    return "?";
}

inline Scheme scheme_from_name(const std::string& name) {
    if (name == "obabo") return Scheme::obabo;
    if (name == "obabco") return Scheme::obabco;
    if (name == "oho") return Scheme::oho;
    throw ConfigError("unknown scheme: " + name);
}

}  // namespace warmhmc
