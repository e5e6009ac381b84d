#include "bnls/field_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include "bnls/norms.hpp"
#include "bnls/util.hpp"

namespace bnls {
namespace {
constexpr char kMagic[8] = {'B', 'N', 'L', 'S', 'F', 'L', 'D', '1'};
}

void save_field(const Field& u, const std::string& path) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("save_field: cannot open " + path);
  f.write(kMagic, 8);
  const std::uint32_t dim = u.grid.dim, n = u.grid.n;
  const double L = u.grid.L;
  const std::uint8_t rep = u.rep == Rep::Fourier ? 1 : 0;
  f.write(reinterpret_cast<const char*>(&dim), 4);
  f.write(reinterpret_cast<const char*>(&n), 4);
  f.write(reinterpret_cast<const char*>(&L), 8);
  f.write(reinterpret_cast<const char*>(&rep), 1);
  f.write(reinterpret_cast<const char*>(u.data.data()),
          static_cast<std::streamsize>(u.data.size() * sizeof(cplx)));
  if (!f) throw std::runtime_error("save_field: write failed for " + path);
  f.close();

  const std::uint64_t digest =
      fnv1a64(u.data.data(), u.data.size() * sizeof(cplx));
  const NormReport nr = sobolev_norms(u);
  std::ofstream side(path + ".json", std::ios::trunc);
  side << "{\n"
       << "  \"format\": \"BNLSFLD1\",\n"
       << "  \"dim\": " << dim << ",\n"
       << "  \"n\": " << n << ",\n"
       << "  \"L\": " << fmt17(L) << ",\n"
       << "  \"representation\": \""
       << (rep ? "fourier" : "physical") << "\",\n"
       << "  \"mass\": " << fmt17(nr.mass) << ",\n"
       << "  \"grad2\": " << fmt17(nr.grad2) << ",\n"
       << "  \"bilap2\": " << fmt17(nr.bilap2) << ",\n"
       << "  \"shifted2\": " << fmt17(nr.shifted2) << ",\n"
       << "  \"payload_fnv1a64\": \"" << std::hex << digest << std::dec
       << "\"\n"
       << "}\n";
}

Field load_field(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("load_field: cannot open " + path);
  char magic[8];
  f.read(magic, 8);
  if (!f || std::memcmp(magic, kMagic, 8) != 0)
    throw std::runtime_error("load_field: bad magic in " + path);
  std::uint32_t dim = 0, n = 0;
  double L = 0;
  std::uint8_t rep = 0;
  f.read(reinterpret_cast<char*>(&dim), 4);
  f.read(reinterpret_cast<char*>(&n), 4);
  f.read(reinterpret_cast<char*>(&L), 8);
  f.read(reinterpret_cast<char*>(&rep), 1);
  if (!f) throw std::runtime_error("load_field: truncated header in " + path);
  Grid g = make_grid(static_cast<int>(dim), static_cast<int>(n), L);
  Field u(g, rep ? Rep::Fourier : Rep::Physical);
  f.read(reinterpret_cast<char*>(u.data.data()),
         static_cast<std::streamsize>(u.data.size() * sizeof(cplx)));
  if (!f) throw std::runtime_error("load_field: truncated payload in " + path);
  return u;
}

}  // namespace bnls
