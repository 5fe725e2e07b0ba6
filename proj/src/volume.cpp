#include "scc/volume.hpp"

namespace scc {

std::string to_string(Shape const &s)
{
  return "[" + std::to_string(s.ncoil) + "," + std::to_string(s.nz) + "," + std::to_string(s.ny) + "," +
         std::to_string(s.nx) + "]";
}

ComplexVolume to_complex(RealVolume const &v)
{
  return ComplexVolume(v.shape(), v.data().cast<Complex>(), v.domain(), v.geometry());
}

RealVolume real_part(ComplexVolume const &v)
{
  return RealVolume(v.shape(), v.data().real(), v.domain(), v.geometry());
}

RealVolume magnitude(ComplexVolume const &v)
{
  return RealVolume(v.shape(), v.data().abs(), v.domain(), v.geometry());
}

} // namespace scc
