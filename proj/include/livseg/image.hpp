// Copyright (c) 2026 The livseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef LIVSEG__IMAGE_HPP_
#define LIVSEG__IMAGE_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace livseg
{

/**
 * @brief Row-major 2-D pixel grid.
 *
 * The buffer length always equals width * height. Pixels are read-only
 * through the public interface; derived types validate their value domain
 * at construction.
 */
template<class T>
class Raster
{
public:
  using value_type = T;

  Raster() = default;

  Raster(std::size_t width, std::size_t height, T fill = T{})
  : width_{width}, height_{height}, data_(width * height, fill)
  {
    check_dims();
  }

  Raster(std::size_t width, std::size_t height, std::vector<T> data)
  : width_{width}, height_{height}, data_(std::move(data))
  {
    check_dims();
    if (data_.size() != width_ * height_) {
      throw std::invalid_argument(
              "raster buffer holds " + std::to_string(data_.size()) +
              " pixels, expected " + std::to_string(width_ * height_));
    }
  }

  std::size_t width() const {return width_;}
  std::size_t height() const {return height_;}
  std::size_t size() const {return data_.size();}
  bool empty() const {return data_.empty();}

  const T & operator()(std::size_t x, std::size_t y) const {return data_[y * width_ + x];}
  const T & operator[](std::size_t i) const {return data_[i];}

  std::span<const T> pixels() const {return data_;}
  const std::vector<T> & buffer() const {return data_;}

  bool same_shape(const Raster & other) const
  {
    return width_ == other.width_ && height_ == other.height_;
  }

  template<class U>
  bool same_shape(const Raster<U> & other) const
  {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Raster &, const Raster &) = default;

protected:
  std::vector<T> & mutable_buffer() {return data_;}

private:
  void check_dims() const
  {
    if (width_ == 0 || height_ == 0) {
      throw std::invalid_argument("raster dimensions must be at least 1x1");
    }
  }

  std::size_t width_{0};
  std::size_t height_{0};
  std::vector<T> data_;
};

/// Grayscale slice. Every intensity lies in [0, max_value].
class GrayImage : public Raster<std::uint16_t>
{
public:
  GrayImage() = default;

  GrayImage(std::size_t width, std::size_t height, std::uint16_t max_value = 255,
    std::uint16_t fill = 0)
  : Raster(width, height, fill), max_value_{max_value}
  {
    validate();
  }

  GrayImage(std::size_t width, std::size_t height, std::vector<std::uint16_t> pixels,
    std::uint16_t max_value = 255)
  : Raster(width, height, std::move(pixels)), max_value_{max_value}
  {
    validate();
  }

  std::uint16_t max_value() const {return max_value_;}

  friend bool operator==(const GrayImage &, const GrayImage &) = default;

private:
  void validate() const
  {
    if (max_value_ == 0) {
      throw std::invalid_argument("max_value must be positive");
    }
    const auto & px = buffer();
    if (std::any_of(px.begin(), px.end(), [this](auto v) {return v > max_value_;})) {
      throw std::invalid_argument("intensity exceeds max_value");
    }
  }

  std::uint16_t max_value_{255};
};

/// Two-valued mask: 0 background, 1 foreground.
class BinaryMask : public Raster<std::uint8_t>
{
public:
  BinaryMask() = default;

  BinaryMask(std::size_t width, std::size_t height, bool fill = false)
  : Raster(width, height, fill ? 1 : 0) {}

  BinaryMask(std::size_t width, std::size_t height, std::vector<std::uint8_t> bits)
  : Raster(width, height, std::move(bits))
  {
    const auto & b = buffer();
    if (std::any_of(b.begin(), b.end(), [](auto v) {return v > 1;})) {
      throw std::invalid_argument("mask values must be 0 or 1");
    }
  }

  void set(std::size_t x, std::size_t y, bool on)
  {
    mutable_buffer()[y * width() + x] = on ? 1 : 0;
  }

  std::size_t popcount() const
  {
    return static_cast<std::size_t>(std::count(buffer().begin(), buffer().end(), 1));
  }

  /// True when every foreground pixel of this mask is foreground in @p other.
  bool subset_of(const BinaryMask & other) const
  {
    if (!same_shape(other)) {
      return false;
    }
    for (std::size_t i = 0; i < size(); ++i) {
      if ((*this)[i] && !other[i]) {
        return false;
      }
    }
    return true;
  }

  friend bool operator==(const BinaryMask &, const BinaryMask &) = default;
};

/// Render a mask as an 8-bit image, foreground white.
inline GrayImage mask_to_image(const BinaryMask & mask)
{
  std::vector<std::uint16_t> px(mask.size());
  std::transform(
    mask.buffer().begin(), mask.buffer().end(), px.begin(),
    [](std::uint8_t b) -> std::uint16_t {return b ? 255 : 0;});
  return GrayImage(mask.width(), mask.height(), std::move(px), 255);
}

/// Nonzero intensities become foreground. Used to load expert masks.
inline BinaryMask image_to_mask(const GrayImage & img)
{
  std::vector<std::uint8_t> bits(img.size());
  std::transform(
    img.buffer().begin(), img.buffer().end(), bits.begin(),
    [](std::uint16_t v) -> std::uint8_t {return v != 0;});
  return BinaryMask(img.width(), img.height(), std::move(bits));
}

/// Linear rescale to the 8-bit axis: floor(p * 255 / max_value).
inline GrayImage to_8bit(const GrayImage & img)
{
  if (img.max_value() == 255) {
    return img;
  }
  std::vector<std::uint16_t> px(img.size());
  const std::uint32_t maxval = img.max_value();
  std::transform(
    img.buffer().begin(), img.buffer().end(), px.begin(),
    [maxval](std::uint16_t v) {
      return static_cast<std::uint16_t>(std::uint32_t{v} * 255u / maxval);
    });
  return GrayImage(img.width(), img.height(), std::move(px), 255);
}

}  // namespace livseg

#endif  // LIVSEG__IMAGE_HPP_
