#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace cohmap {

// Dense row-major raster. Pixel (x, y) = column x of row y.
template <typename T>
class Image {
 public:
  Image() = default;
  Image(int width, int height, T fill = T{})
      : width_(width), height_(height),
        data_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return data_.size(); }

  T& operator()(int x, int y) { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const { return data_[index(x, y)]; }

  T* data() { return data_.data(); }
  const T* data() const { return data_.data(); }
  std::vector<T>& pixels() { return data_; }
  const std::vector<T>& pixels() const { return data_; }

  bool operator==(const Image&) const = default;

  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
           static_cast<std::size_t>(x);
  }

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

using FrameImage = Image<uint16_t>;

}  // namespace cohmap
