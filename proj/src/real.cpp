#include "eislab/real.hpp"

#include <cstdio>
#include <vector>

namespace eislab {

namespace {
thread_local long t_working_prec = 128;
}

long working_precision() noexcept { return t_working_prec; }

void set_working_precision(long bits) noexcept { t_working_prec = bits < 2 ? 2 : bits; }

std::string Real::str(int digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%dRg", digits);
    char* out = nullptr;
    mpfr_asprintf(&out, fmt, v_);
    std::string s(out);
    mpfr_free_str(out);
    return s;
}

}  // namespace eislab
