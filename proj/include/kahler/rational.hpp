#pragma once

#include <gmpxx.h>

#include <string>

namespace kahler {

using integer = mpz_class;
using rational = mpq_class;

inline rational make_rational(long num, long den = 1)
{
    rational q{integer(num), integer(den)};
    q.canonicalize();
    return q;
}

inline integer binomial(unsigned long n, unsigned long k)
{
    integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline bool fits_long(const integer& z) { return z.fits_slong_p(); }

} // namespace kahler
