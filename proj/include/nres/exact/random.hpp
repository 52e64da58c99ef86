#pragma once

#include <cstdint>
#include <random>

#include "nres/exact/gauss_rational.hpp"

namespace nres {

using Rng = std::mt19937_64;

/// Small random rational p/q with |p| <= max_num, 1 <= q <= max_den.
inline GaussRational random_rational(Rng& rng, long max_num = 9, long max_den = 5)
{
    std::uniform_int_distribution<long> num(-max_num, max_num);
    std::uniform_int_distribution<long> den(1, max_den);
    return GaussRational::ratio(num(rng), den(rng));
}

/// Same, but never zero.
inline GaussRational random_nonzero_rational(Rng& rng, long max_num = 9, long max_den = 5)
{
    for (;;) {
        GaussRational r = random_rational(rng, max_num, max_den);
        if (!r.is_zero())
            return r;
    }
}

/// Random a + b*i with both parts drawn as above.
inline GaussRational random_gauss(Rng& rng, long max_num = 9, long max_den = 5)
{
    GaussRational re = random_rational(rng, max_num, max_den);
    GaussRational im = random_rational(rng, max_num, max_den);
    return re + im * GaussRational::i();
}

inline bool coin(Rng& rng, double p_true)
{
    return std::bernoulli_distribution(p_true)(rng);
}

} // namespace nres
