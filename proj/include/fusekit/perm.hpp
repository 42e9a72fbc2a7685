#ifndef FUSEKIT_PERM_HPP
#define FUSEKIT_PERM_HPP

#include <cstdint>
#include <cstring>
#include <functional>
#include <string>
#include <vector>

#include "fusekit/error.hpp"

namespace fusekit {

// A permutation of {0,...,degree-1}, stored as its image list.
class Perm {
 public:
  Perm() = default;
  explicit Perm(int degree) : img_(degree) {
    for (int i = 0; i < degree; ++i) img_[i] = static_cast<uint16_t>(i);
  }
  explicit Perm(std::vector<uint16_t> images) : img_(std::move(images)) {}

  static Perm identity(int degree) { return Perm(degree); }

  int degree() const { return static_cast<int>(img_.size()); }
  uint16_t operator[](int i) const { return img_[i]; }
  uint16_t& at(int i) { return img_[i]; }
  const std::vector<uint16_t>& images() const { return img_; }

  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  // this followed by other (left-to-right action: x(fg) = (xf)g).
  Perm then(const Perm& other) const {
    Perm r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[i] = other.img_[img_[i]];
    return r;
  }

  Perm inverse() const {
    Perm r;
    r.img_.resize(img_.size());
    for (size_t i = 0; i < img_.size(); ++i) r.img_[img_[i]] = static_cast<uint16_t>(i);
    return r;
  }

  int order() const {
    // lcm of cycle lengths
    std::vector<char> seen(img_.size(), 0);
    int64_t ord = 1;
    for (size_t i = 0; i < img_.size(); ++i) {
      if (seen[i]) continue;
      int len = 0;
      size_t j = i;
      while (!seen[j]) {
        seen[j] = 1;
        j = img_[j];
        ++len;
      }
      int64_t g = gcd64(ord, len);
      ord = ord / g * len;
      if (ord > (1 << 30)) fail(ErrorCode::EnumerationCapExceeded, "permutation order overflow");
    }
    return static_cast<int>(ord);
  }

  bool operator==(const Perm& o) const { return img_ == o.img_; }
  bool operator!=(const Perm& o) const { return img_ != o.img_; }
  bool operator<(const Perm& o) const { return img_ < o.img_; }

  std::string to_string() const;  // 1-based image list, space separated

 private:
  static int64_t gcd64(int64_t a, int64_t b) {
    while (b) {
      int64_t t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  std::vector<uint16_t> img_;
};

struct PermHash {
  size_t operator()(const Perm& p) const {
    // FNV-1a over the raw image bytes
    const auto& v = p.images();
    uint64_t h = 1469598103934665603ULL;
    const unsigned char* data = reinterpret_cast<const unsigned char*>(v.data());
    size_t n = v.size() * sizeof(uint16_t);
    for (size_t i = 0; i < n; ++i) {
      h ^= data[i];
      h *= 1099511628211ULL;
    }
    return static_cast<size_t>(h);
  }
};

inline std::string Perm::to_string() const {
  std::string s;
  for (int i = 0; i < degree(); ++i) {
    if (i) s += ' ';
    s += std::to_string(img_[i] + 1);
  }
  return s;
}

}  // namespace fusekit

#endif
