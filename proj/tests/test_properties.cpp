// Randomized invariants with a fixed seed (at least 10^4 draws each) and the
// same invariants checked exhaustively for n <= 4.

#include <random>
#include <vector>

#include <catch_amalgamated.hpp>

#include "contractions/contractions.hpp"

using namespace contractions;

namespace {
  constexpr std::uint64_t kSeed    = 0x5eed'c0ffeeULL;
  constexpr int           kSamples = 10'000;

  struct Sampler {
    explicit Sampler(FamilySet const& s) : set(s), pick(0, s.size() - 1) {}
    Transformation const& operator()(std::mt19937_64& rng) {
      return set[pick(rng)];
    }
    FamilySet const&                           set;
    std::uniform_int_distribution<std::size_t> pick;
  };

  // Idempotent iff the map fixes its image pointwise.
  bool fixes_image(Transformation const& t) {
    for (int v : image(t)) {
      if (t(v) != v) {
        return false;
      }
    }
    return true;
  }

  template <typename F>
  void for_all_samples(FamilySet const& s, F check) {
    std::mt19937_64 rng(kSeed);
    Sampler         draw(s);
    for (int i = 0; i < kSamples; ++i) {
      auto const& a = draw(rng);
      auto const& b = draw(rng);
      auto const& c = draw(rng);
      check(a, b, c);
    }
  }

  template <typename F>
  void for_all_triples(FamilySet const& s, F check) {
    for (auto const& a : s) {
      for (auto const& b : s) {
        for (auto const& c : s) {
          check(a, b, c);
        }
      }
    }
  }
}  // namespace

TEST_CASE("associativity", "[properties]") {
  auto check = [](auto const& a, auto const& b, auto const& c) {
    REQUIRE((a * b) * c == a * (b * c));
  };
  for_all_samples(enumerate("reg-orct", 7, Method::construct), check);
  for_all_samples(enumerate("ct", 6, Method::filter), check);
  for_all_triples(enumerate("orct", 4, Method::filter), check);
}

TEST_CASE("contractions are closed under composition", "[properties]") {
  for (auto spec : {"ct", "oct", "orct"}) {
    auto const s = enumerate(spec, 6, Method::filter);
    for_all_samples(s, [&](auto const& a, auto const& b, auto const&) {
      REQUIRE(is_contraction(a * b));
      REQUIRE(s.contains(a * b));
    });
    auto const small = enumerate(spec, 4, Method::filter);
    for (auto const& a : small) {
      for (auto const& b : small) {
        REQUIRE(small.contains(a * b));
      }
    }
  }
}

TEST_CASE("rank never grows under composition", "[properties]") {
  auto check = [](auto const& a, auto const& b, auto const&) {
    REQUIRE(rank(a * b) <= std::min(rank(a), rank(b)));
  };
  for_all_samples(enumerate("ct", 6, Method::filter), check);
  auto const s = enumerate("ct", 4, Method::filter);
  for (auto const& a : s) {
    for (auto const& b : s) {
      check(a, b, a);
    }
  }
}

TEST_CASE("idempotency criterion", "[properties]") {
  auto check = [](auto const& a, auto const&, auto const&) {
    REQUIRE((a * a == a) == fixes_image(a));
    REQUIRE(classify(a).idempotent == fixes_image(a));
  };
  for_all_samples(enumerate("ct", 6, Method::filter), check);
  for (auto const& a : enumerate("ct", 4, Method::filter)) {
    check(a, a, a);
  }
  for (std::size_t n = 1; n <= 7; ++n) {
    for (auto const& e : enumerate("e-orct", n, Method::construct)) {
      REQUIRE(fixes_image(e));
    }
  }
}

TEST_CASE("star is an involution into the reversing maps", "[properties]") {
  auto const orct = enumerate("orct", 6, Method::filter);
  auto const reg  = enumerate("reg-orct", 6, Method::filter);
  for_all_samples(orct, [&](auto const& a, auto const&, auto const&) {
    REQUIRE(star(star(a)) == a);
    REQUIRE(orct.contains(star(a)));
    REQUIRE(reg.contains(star(a)) == reg.contains(a));
    REQUIRE(reverse_within_image(reverse_within_image(a)) == a);
    REQUIRE(image(reverse_within_image(a)) == image(a));
  });
  for (std::size_t n = 1; n <= 4; ++n) {
    auto const s = enumerate("orct", n, Method::filter);
    for (auto const& a : s) {
      REQUIRE(star(star(a)) == a);
      REQUIRE(s.contains(star(a)));
      auto const f = classify(a), g = classify(star(a));
      REQUIRE(f.order_preserving == g.order_reversing);
    }
  }
}

TEST_CASE("closure is idempotent", "[properties]") {
  std::mt19937_64 rng(kSeed);
  auto const      reg = enumerate("reg-orct", 5, Method::filter);
  Sampler         draw(reg);
  for (int i = 0; i < kSamples; ++i) {
    std::vector<Transformation> gens{draw(rng)};
    if (i % 2 == 0) {
      gens.push_back(draw(rng));
    }
    auto const once  = closure(gens);
    auto const twice = closure(once.elements());
    REQUIRE(once == twice);
    for (auto const& g : gens) {
      REQUIRE(once.contains(g));
    }
  }
  auto const small = enumerate("orct", 4, Method::filter);
  for (auto const& a : small) {
    for (auto const& b : small) {
      std::vector<Transformation> gens{a, b};
      auto const c = closure(gens);
      REQUIRE(closure(c.elements()) == c);
    }
  }
}

TEST_CASE("regular families are closed", "[properties]") {
  for (std::size_t n = 1; n <= 6; ++n) {
    for (auto spec : {"reg-oct", "reg-orct", "e-orct"}) {
      auto const s = enumerate(spec, n, Method::filter);
      for_all_samples(s, [&](auto const& a, auto const& b, auto const&) {
        REQUIRE(s.contains(a * b));
      });
    }
  }
}
