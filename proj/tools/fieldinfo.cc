// Inspect a saved field: header, norms, and the functional suite at a given
// (sigma, c).  Usage: fieldinfo FILE [sigma] [c]
#include <cstdio>
#include <cstdlib>
#include <string>

#include "bnls/field_io.hpp"
#include "bnls/functionals.hpp"
#include "bnls/norms.hpp"
#include "bnls/util.hpp"

int main(int argc, char** argv) {
  if (argc < 2 || argc > 4) {
    std::fprintf(stderr, "usage: fieldinfo FILE [sigma] [c]\n");
    return 2;
  }
  const double sigma = argc > 2 ? std::atof(argv[2]) : 1.0;
  const double c = argc > 3 ? std::atof(argv[3]) : 1.0;
  try {
    const bnls::Field u = bnls::load_field(argv[1]);
    std::printf("dim=%d n=%d L=%s rep=%s\n", u.grid.dim, u.grid.n,
                bnls::fmt17(u.grid.L).c_str(),
                u.rep == bnls::Rep::Fourier ? "fourier" : "physical");
    const bnls::FunctionalReport f = bnls::functional_suite(u, {sigma, c});
    std::printf("mass=%s grad2=%s bilap2=%s shifted2=%s lp=%s\n",
                bnls::fmt17(f.mass).c_str(), bnls::fmt17(f.grad2).c_str(),
                bnls::fmt17(f.bilap2).c_str(), bnls::fmt17(f.shifted2).c_str(),
                bnls::fmt17(f.lp).c_str());
    std::printf("sigma=%s c=%s\n", bnls::fmt17(sigma).c_str(),
                bnls::fmt17(c).c_str());
    std::printf("E=%s Sc=%s Tc=%s Kc=%s K=%s D=%s\n", bnls::fmt17(f.E).c_str(),
                bnls::fmt17(f.Sc).c_str(), bnls::fmt17(f.Tc).c_str(),
                bnls::fmt17(f.Kc).c_str(), bnls::fmt17(f.K).c_str(),
                bnls::fmt17(f.D).c_str());
    std::printf("Nc=%s Pc=%s P1=%s P2=%s lambda=%s c_of_u=%s\n",
                bnls::fmt17(f.Nc).c_str(), bnls::fmt17(f.Pc).c_str(),
                bnls::fmt17(f.P1).c_str(), bnls::fmt17(f.P2).c_str(),
                bnls::fmt17(f.lambda).c_str(), bnls::fmt17(f.c_of_u).c_str());
  } catch (const std::exception& e) {
    std::fprintf(stderr, "fieldinfo: %s\n", e.what());
    return 1;
  }
  return 0;
}
