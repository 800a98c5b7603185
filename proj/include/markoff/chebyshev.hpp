#ifndef MARKOFF_CHEBYSHEV_HPP
#define MARKOFF_CHEBYSHEV_HPP

#include <markoff/kpoly.hpp>

namespace markoff {

// U_{n}(x/2) for the Chebyshev polynomials of the second kind:
// 1, x, x^2 - 1, x^3 - 2x, ...
KPoly chebyshev_u_half(long n);

// The even polynomial u_n in x: U_{n-1}(x/2) for odd n and x*U_{n-1}(x/2)
// for even n.  Its roots are 2cos(j*pi/n) for 1 <= j < n, plus 0 when n is even.
KPoly chebyshev_u(long n);

}  // namespace markoff

#endif
