#ifndef CONTRACTIONS_TRANSFORMATION_HPP_
#define CONTRACTIONS_TRANSFORMATION_HPP_

// Full transformations of the chain [n] = {1, ..., n}, written on the right:
// the product ab maps x to (xa)b.  Points and images are 1-based everywhere.

#include <algorithm>
#include <array>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "error.hpp"

namespace contractions {

  inline constexpr std::size_t kMaxDegree = 64;

  class Transformation;

  Transformation make_transformation(std::size_t n,
                                     std::span<long long const> images);

  class Transformation {
   public:
    using point_type = std::uint8_t;

    // The empty map of degree 0; only useful as a placeholder.
    Transformation() = default;

    [[nodiscard]] std::size_t degree() const noexcept {
      return _degree;
    }

    // Image of the point x, with x in [1, degree].
    [[nodiscard]] int operator()(std::size_t x) const noexcept {
      return _images[x - 1];
    }

    [[nodiscard]] std::span<point_type const> images() const noexcept {
      return {_images.data(), _degree};
    }

    friend bool operator==(Transformation const&, Transformation const&)
        = default;

    // Canonical order: degree first, then lexicographic on the image list.
    friend std::strong_ordering operator<=>(Transformation const& lhs,
                                            Transformation const& rhs) {
      if (auto c = lhs._degree <=> rhs._degree; c != 0) {
        return c;
      }
      return std::lexicographical_compare_three_way(lhs._images.begin(),
                                                    lhs._images.end(),
                                                    rhs._images.begin(),
                                                    rhs._images.end());
    }

   private:
    friend Transformation make_transformation(std::size_t,
                                              std::span<long long const>);
    friend Transformation compose(Transformation const&,
                                  Transformation const&);

    std::uint8_t                           _degree = 0;
    std::array<point_type, kMaxDegree>     _images{};
  };

  inline Transformation make_transformation(std::size_t               n,
                                            std::span<long long const> images) {
    if (n == 0 || n > kMaxDegree) {
      throw Error(ErrorCode::out_of_range,
                  "degree " + std::to_string(n) + " not in [1, "
                      + std::to_string(kMaxDegree) + "]");
    }
    if (images.size() != n) {
      throw Error(ErrorCode::wrong_length,
                  "expected " + std::to_string(n) + " images, got "
                      + std::to_string(images.size()));
    }
    Transformation result;
    result._degree = static_cast<std::uint8_t>(n);
    for (std::size_t x = 0; x < n; ++x) {
      if (images[x] < 1 || images[x] > static_cast<long long>(n)) {
        throw Error(ErrorCode::out_of_range,
                    "image " + std::to_string(images[x]) + " of point "
                        + std::to_string(x + 1) + " not in [1, "
                        + std::to_string(n) + "]");
      }
      result._images[x] = static_cast<Transformation::point_type>(images[x]);
    }
    return result;
  }

  inline Transformation make_transformation(std::size_t n,
                                            std::span<int const> images) {
    std::vector<long long> wide(images.begin(), images.end());
    return make_transformation(n, std::span<long long const>(wide));
  }

  inline Transformation make_transformation(std::size_t                n,
                                            std::initializer_list<int> images) {
    return make_transformation(
        n, std::span<int const>(images.begin(), images.size()));
  }

  // Degree is taken from the list length.
  inline Transformation make_transformation(std::initializer_list<int> images) {
    return make_transformation(images.size(), images);
  }

  inline Transformation compose(Transformation const& a,
                                Transformation const& b) {
    if (a._degree != b._degree) {
      throw Error(ErrorCode::degree_mismatch,
                  "cannot compose degree " + std::to_string(a._degree)
                      + " with degree " + std::to_string(b._degree));
    }
    Transformation result;
    result._degree = a._degree;
    for (std::size_t x = 0; x < a._degree; ++x) {
      result._images[x] = b._images[a._images[x] - 1];
    }
    return result;
  }

  inline Transformation operator*(Transformation const& a,
                                  Transformation const& b) {
    return compose(a, b);
  }

  struct TransformationHash {
    std::size_t operator()(Transformation const& t) const noexcept {
      auto img = t.images();
      return std::hash<std::string_view>{}(std::string_view(
          reinterpret_cast<char const*>(img.data()), img.size()));
    }
  };

  ////////////////////////////////////////////////////////////////////////
  // Special maps
  ////////////////////////////////////////////////////////////////////////

  enum class SpecialKind { identity, reversal, constant };

  // `c` is only read for SpecialKind::constant.
  inline Transformation special(std::size_t n, SpecialKind kind, int c = 1) {
    std::vector<long long> img(n);
    for (std::size_t x = 1; x <= n; ++x) {
      switch (kind) {
        case SpecialKind::identity: img[x - 1] = static_cast<long long>(x); break;
        case SpecialKind::reversal:
          img[x - 1] = static_cast<long long>(n + 1 - x);
          break;
        case SpecialKind::constant: img[x - 1] = c; break;
      }
    }
    return make_transformation(n, std::span<long long const>(img));
  }

  inline Transformation identity(std::size_t n) {
    return special(n, SpecialKind::identity);
  }

  // x -> n + 1 - x, the order-reversing isometry.
  inline Transformation reversal(std::size_t n) {
    return special(n, SpecialKind::reversal);
  }

  inline Transformation constant(std::size_t n, int c) {
    return special(n, SpecialKind::constant, c);
  }

  ////////////////////////////////////////////////////////////////////////
  // Kernel, image, fix
  ////////////////////////////////////////////////////////////////////////

  class KernelPartition {
   public:
    using block_type = std::vector<int>;

    // Blocks may be given in any order and need not be sorted internally.
    KernelPartition(std::size_t n, std::vector<block_type> blocks)
        : _degree(n), _blocks(std::move(blocks)) {
      std::vector<int> seen(n + 1, 0);
      for (auto& b : _blocks) {
        if (b.empty()) {
          throw Error(ErrorCode::bad_parameter, "empty kernel block");
        }
        std::sort(b.begin(), b.end());
        for (int x : b) {
          if (x < 1 || x > static_cast<int>(n) || seen[x]++ != 0) {
            throw Error(ErrorCode::bad_parameter,
                        "kernel blocks must partition [1, n]");
          }
        }
      }
      if (std::count(seen.begin() + 1, seen.end(), 1)
          != static_cast<std::ptrdiff_t>(n)) {
        throw Error(ErrorCode::bad_parameter, "kernel blocks do not cover [1, n]");
      }
      std::sort(_blocks.begin(), _blocks.end(), [](auto const& a, auto const& b) {
        return a.front() < b.front();
      });
    }

    [[nodiscard]] std::size_t degree() const noexcept {
      return _degree;
    }
    [[nodiscard]] std::size_t size() const noexcept {
      return _blocks.size();
    }
    [[nodiscard]] std::vector<block_type> const& blocks() const noexcept {
      return _blocks;
    }
    [[nodiscard]] block_type const& operator[](std::size_t i) const {
      return _blocks[i];
    }

    friend bool operator==(KernelPartition const&, KernelPartition const&)
        = default;
    friend auto operator<=>(KernelPartition const&, KernelPartition const&)
        = default;

   private:
    std::size_t             _degree;
    std::vector<block_type> _blocks;
  };

  inline std::vector<int> image(Transformation const& t) {
    std::vector<int> result(t.images().begin(), t.images().end());
    std::sort(result.begin(), result.end());
    result.erase(std::unique(result.begin(), result.end()), result.end());
    return result;
  }

  // Height of t, |Im t|.  Not to be confused with the rank of a semigroup.
  inline std::size_t rank(Transformation const& t) {
    std::array<bool, kMaxDegree + 1> hit{};
    std::size_t                      count = 0;
    for (auto v : t.images()) {
      if (!hit[v]) {
        hit[v] = true;
        ++count;
      }
    }
    return count;
  }

  inline std::size_t fix(Transformation const& t) {
    std::size_t count = 0;
    for (std::size_t x = 1; x <= t.degree(); ++x) {
      count += (t(x) == static_cast<int>(x));
    }
    return count;
  }

  inline KernelPartition kernel(Transformation const& t) {
    std::vector<std::vector<int>> by_image(t.degree() + 1);
    for (std::size_t x = 1; x <= t.degree(); ++x) {
      by_image[t(x)].push_back(static_cast<int>(x));
    }
    std::vector<std::vector<int>> blocks;
    for (auto& b : by_image) {
      if (!b.empty()) {
        blocks.push_back(std::move(b));
      }
    }
    return KernelPartition(t.degree(), std::move(blocks));
  }

  struct Analysis {
    KernelPartition  kernel;
    std::vector<int> image;
    std::size_t      rank;
    std::size_t      fix;
  };

  inline Analysis analyze(Transformation const& t) {
    auto img = image(t);
    auto r   = img.size();
    return Analysis{kernel(t), std::move(img), r, fix(t)};
  }

  ////////////////////////////////////////////////////////////////////////
  // Properties
  ////////////////////////////////////////////////////////////////////////

  struct PropertyFlags {
    bool order_preserving = false;
    bool order_reversing  = false;
    bool contraction      = false;
    bool isometry         = false;
    bool idempotent       = false;

    friend bool operator==(PropertyFlags const&, PropertyFlags const&)
        = default;
  };

  // Every flag is the literal check over all pairs of points.
  inline PropertyFlags classify(Transformation const& t) {
    PropertyFlags f{true, true, true, true, false};
    auto const    n = t.degree();
    for (std::size_t x = 1; x <= n; ++x) {
      for (std::size_t y = x + 1; y <= n; ++y) {
        int const d  = static_cast<int>(y - x);
        int const dv = std::abs(t(x) - t(y));
        f.order_preserving = f.order_preserving && t(x) <= t(y);
        f.order_reversing  = f.order_reversing && t(x) >= t(y);
        f.contraction      = f.contraction && dv <= d;
        f.isometry         = f.isometry && dv == d;
      }
    }
    f.idempotent = (compose(t, t) == t);
    return f;
  }

  inline bool is_contraction(Transformation const& t) {
    auto const n = t.degree();
    for (std::size_t x = 1; x <= n; ++x) {
      for (std::size_t y = x + 1; y <= n; ++y) {
        if (std::abs(t(x) - t(y)) > static_cast<int>(y - x)) {
          return false;
        }
      }
    }
    return true;
  }

  ////////////////////////////////////////////////////////////////////////
  // Transversals
  ////////////////////////////////////////////////////////////////////////

  struct Transversal {
    std::vector<int> points;  // sorted
    bool             convex;
    bool             admissible;
  };

  // All transversals of `k`, in odometer order over the blocks.  The count is
  // the product of the block sizes.
  inline std::vector<Transversal> transversals(KernelPartition const& k) {
    auto const&              blocks = k.blocks();
    std::vector<std::size_t> choice(blocks.size(), 0);
    std::vector<int>         block_of(k.degree() + 1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      for (int x : blocks[i]) {
        block_of[x] = static_cast<int>(i);
      }
    }
    std::vector<Transversal> result;
    while (true) {
      std::vector<int> pts(blocks.size());
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        pts[i] = blocks[i][choice[i]];
      }
      std::vector<long long> collapse(k.degree());
      for (std::size_t x = 1; x <= k.degree(); ++x) {
        collapse[x - 1] = pts[block_of[x]];
      }
      std::sort(pts.begin(), pts.end());
      bool convex = pts.back() - pts.front() + 1 == static_cast<int>(pts.size());
      bool admissible = is_contraction(
          make_transformation(k.degree(), std::span<long long const>(collapse)));
      result.push_back({std::move(pts), convex, admissible});

      std::size_t i = 0;
      for (; i < blocks.size(); ++i) {
        if (++choice[i] < blocks[i].size()) {
          break;
        }
        choice[i] = 0;
      }
      if (i == blocks.size()) {
        break;
      }
    }
    return result;
  }

  ////////////////////////////////////////////////////////////////////////
  // Literal grammar: "[i1,i2,...,in]", whitespace ignored
  ////////////////////////////////////////////////////////////////////////

  inline std::string format_transformation(Transformation const& t) {
    std::string out = "[";
    for (std::size_t x = 1; x <= t.degree(); ++x) {
      if (x > 1) {
        out += ',';
      }
      out += std::to_string(t(x));
    }
    out += ']';
    return out;
  }

  inline Transformation parse_transformation(std::string_view text) {
    std::string compact;
    for (char c : text) {
      if (c != ' ' && c != '\t' && c != '\n' && c != '\r') {
        compact += c;
      }
    }
    auto fail = [&](std::string const& why) {
      return Error(ErrorCode::syntax_error,
                   why + " in \"" + std::string(text) + "\"");
    };
    if (compact.size() < 3 || compact.front() != '[' || compact.back() != ']') {
      throw fail("expected [i1,...,in]");
    }
    std::vector<long long> values;
    char const*            p   = compact.data() + 1;
    char const*            end = compact.data() + compact.size() - 1;
    while (true) {
      long long v   = 0;
      auto [ptr, ec] = std::from_chars(p, end, v);
      if (ec != std::errc() || ptr == p) {
        throw fail("expected integer");
      }
      values.push_back(v);
      p = ptr;
      if (p == end) {
        break;
      }
      if (*p != ',') {
        throw fail("expected ','");
      }
      ++p;
    }
    return make_transformation(values.size(),
                               std::span<long long const>(values));
  }

  inline std::ostream& operator<<(std::ostream& os, Transformation const& t) {
    return os << format_transformation(t);
  }

}  // namespace contractions

#endif  // CONTRACTIONS_TRANSFORMATION_HPP_
