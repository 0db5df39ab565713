#ifndef BERTHA_DEVICE_HPP
#define BERTHA_DEVICE_HPP

namespace bertha {

/**
 * \brief One-dimensional device described by its start and end coordinates.
 *
 * The device is the sample piece of functionality shipped with the project
 * skeleton. Coordinates are dimensionless; the only guaranteed invariant is
 * that the end coordinate never precedes the start coordinate, so the length
 * is always non-negative. Zero-length devices are valid.
 */
class device
{
public:
  /**
   * \brief Creates a device from explicit coordinates.
   *
   * \param start Start coordinate.
   * \param end End coordinate, must not precede \p start.
   * \exception std::invalid_argument If a coordinate is not finite or the
   * end coordinate precedes the start coordinate.
   */
  device(double start, double end);

  /**
   * \brief Creates a device of the given length, starting at the origin.
   *
   * \param length Length of the device, must be non-negative.
   * \exception std::invalid_argument If the length is negative or not
   * finite.
   */
  explicit device(double length);

  /** \brief Returns the length of the device (end minus start). */
  double get_length() const;

  /** \brief Returns the start coordinate. */
  double get_start() const;

  /** \brief Returns the end coordinate. */
  double get_end() const;

private:
  double m_start;
  double m_end;
};

} // namespace bertha

#endif // BERTHA_DEVICE_HPP
