#include "bertha/device.hpp"

#include <cmath>
#include <stdexcept>

namespace bertha {

device::device(double start, double end)
  : m_start(start)
  , m_end(end)
{
  if (!std::isfinite(start) || !std::isfinite(end)) {
    throw std::invalid_argument("device coordinates must be finite");
  }
  if (end < start) {
    throw std::invalid_argument(
      "device end coordinate must not precede its start coordinate");
  }
}

device::device(double length)
  : device(0.0, length)
{
}

double
device::get_length() const
{
  return m_end - m_start;
}

double
device::get_start() const
{
  return m_start;
}

double
device::get_end() const
{
  return m_end;
}

} // namespace bertha
