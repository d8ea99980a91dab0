// Computes the Lie 3-derivations of the 3x3 nest algebra with blocks (1,2),
// splits one of them into derivation + central part and checks the result.

#include <iostream>

#include "nestlie/nestlie.hpp"

int main() {
  using namespace nestlie;

  const NestSpec spec({1, 2});
  const std::size_t n = 3;

  const MapSpace lie = lie_n_space(spec, n);
  const MapSpace der = derivation_space(spec);
  const MapSpace cv = central_vanishing_space(spec, n);
  std::cout << "nest " << spec.str() << ", n = " << n << "\n"
            << "  dim Lie n-derivations      " << lie.dim() << "\n"
            << "  dim derivations            " << der.dim() << "\n"
            << "  dim central vanishing maps " << cv.dim() << "\n";

  // L = [T, .] + H with T = E_13 + 2 E_22 and H(E_11) = I.
  const AlgBasis basis(spec);
  Mat t(3, 3);
  t(0, 2) = 1;
  t(1, 1) = 2;
  LinMap l = inner_derivation(basis, t);
  l.value(*basis.index_of(0, 0)) += Mat::identity(3);

  const Certificate cert = decompose(l, n, default_route(spec));
  std::cout << "  route " << to_string(cert.route) << ", verified " << std::boolalpha << verify_certificate(cert) << "\n";
  std::cout << io::encode(cert.H).dump() << "\n";
  return cert.verified ? 0 : 1;
}
