#ifndef QDWELL_UNITS_HPP
#define QDWELL_UNITS_HPP

// Natural-unit convention used throughout the library:
//   hbar = M = omega0 = k_B = 1
// so that
//   length      -> sqrt(hbar / (M omega0))
//   energy      -> hbar omega0
//   time        -> 1 / omega0
//   damping     -> omega0
//   temperature -> hbar omega0 / k_B
//   asymmetry   -> sqrt(M hbar omega0^3)        (force-like)
//   Q(t)        -> M omega0 / hbar              (inverse length squared)
// Every public quantity is a plain double carrying one of these dimensions;
// annotating and stripping a unit is the identity on the stored value.

namespace qdwell {

struct UnitSystem {
    static constexpr double hbar = 1.0;
    static constexpr double mass = 1.0;
    static constexpr double omega0 = 1.0;
    static constexpr double k_boltzmann = 1.0;
};

} // namespace qdwell

#endif
