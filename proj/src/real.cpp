#include "dwb/real.hpp"

#include <array>

namespace dwb {

Real to_real(const Rat& r) {
    // Three double limbs carry ~159 bits, enough to round to 113.
    mpf_class rest(r.raw(), 256);
    Real acc = 0;
    for (int limb = 0; limb < 3; ++limb) {
        const double d = rest.get_d();
        acc += static_cast<Real>(d);
        rest -= d;
    }
    return acc;
}

std::string format_real(Real v, int significant_digits) {
    std::array<char, 128> buf{};
    quadmath_snprintf(buf.data(), buf.size(), "%.*Qg", significant_digits, v);
    return buf.data();
}

}  // namespace dwb
