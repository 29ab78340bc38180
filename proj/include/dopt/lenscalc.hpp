#pragma once

// Dependent lenses in any category with pullbacks, and the opposite-category
// adapter that turns them into dependent prisms.

#include <functional>
#include <utility>

#include "dopt/fincore.hpp"

namespace dopt {

template <class Mor>
struct Cone {
  std::size_t apex = 0;
  Mor p1;
  Mor p2;
};

/// Finite sets and functions, with pullbacks and pushouts.
struct FinSetCat {
  using Mor = FinFn;
  static std::size_t src(const Mor& f) { return f.dom.size; }
  static std::size_t dst(const Mor& f) { return f.cod.size; }
  static Mor identity(std::size_t n) { return FinFn::identity(n); }
  static Mor compose(const Mor& g, const Mor& f) { return dopt::compose(g, f); }
  static void for_each_hom(std::size_t a, std::size_t b, const std::function<bool(const Mor&)>& visit) {
    for_each_function(a, b, visit);
  }
  static Cone<Mor> pullback(const Mor& f, const Mor& g);
  static Cone<Mor> pushout(const Mor& f, const Mor& g);
  /// The map w ↦ (u w, v w) into a pullback.
  static Mor pullback_pair(const Cone<Mor>& p, const Mor& u, const Mor& v);
  /// The map out of a pushout restricting to u and v.
  static Mor pushout_copair(const Cone<Mor>& q, const Mor& u, const Mor& v);
};

/// C^op. An arrow a → b is stored as the C-arrow b → a. Pullbacks in C^op
/// are pushouts in C and vice versa.
template <class C>
struct Opposite {
  struct Mor {
    typename C::Mor m;
    friend bool operator==(const Mor&, const Mor&) = default;
  };
  static std::size_t src(const Mor& f) { return C::dst(f.m); }
  static std::size_t dst(const Mor& f) { return C::src(f.m); }
  static Mor identity(std::size_t n) { return {C::identity(n)}; }
  static Mor compose(const Mor& g, const Mor& f) { return {C::compose(f.m, g.m)}; }
  static void for_each_hom(std::size_t a, std::size_t b, const std::function<bool(const Mor&)>& visit) {
    C::for_each_hom(b, a, [&](const typename C::Mor& m) { return visit(Mor{m}); });
  }
  static Cone<Mor> pullback(const Mor& f, const Mor& g) {
    auto q = C::pushout(f.m, g.m);
    return {q.apex, {q.p1}, {q.p2}};
  }
  static Cone<Mor> pushout(const Mor& f, const Mor& g) {
    auto p = C::pullback(f.m, g.m);
    return {p.apex, {p.p1}, {p.p2}};
  }
  static Mor pullback_pair(const Cone<Mor>& p, const Mor& u, const Mor& v) {
    return {C::pushout_copair(down(p), u.m, v.m)};
  }
  static Mor pushout_copair(const Cone<Mor>& q, const Mor& u, const Mor& v) {
    return {C::pullback_pair(down(q), u.m, v.m)};
  }

 private:
  static Cone<typename C::Mor> down(const Cone<Mor>& c) { return {c.apex, c.p1.m, c.p2.m}; }
};

/// Lenses between cospans X → A ← X' in C. A morphism (X, X')_A → (Y, Y')_B
/// is a pair (get: X → Y, put: X ×_B Y' → X') with put over A, where X sits
/// over B via y ∘ get.
template <class C>
struct LensCalculus {
  using Mor = typename C::Mor;

  struct Cospan {
    Mor leg;    // X → A
    Mor leg_p;  // X' → A
  };

  static Cone<Mor> put_domain(const Cospan& t, const Mor& get) {
    return C::pullback(C::compose(t.leg, get), t.leg_p);
  }

  static bool put_ok(const Cospan& s, const Cone<Mor>& p, const Mor& put) {
    return C::compose(s.leg_p, put) == C::compose(s.leg, p.p1);
  }

  /// Calls visit(get, put) for every lens; stops when visit returns false.
  static void for_each_lens(const Cospan& s, const Cospan& t,
                            const std::function<bool(const Mor&, const Mor&)>& visit) {
    bool go = true;
    C::for_each_hom(C::src(s.leg), C::src(t.leg), [&](const Mor& get) {
      Cone<Mor> p = put_domain(t, get);
      C::for_each_hom(p.apex, C::src(s.leg_p), [&](const Mor& put) {
        if (put_ok(s, p, put)) go = visit(get, put);
        return go;
      });
      return go;
    });
  }

  static bool is_lens(const Cospan& s, const Cospan& t, const Mor& get, const Mor& put) {
    if (C::src(get) != C::src(s.leg) || C::dst(get) != C::src(t.leg)) return false;
    Cone<Mor> p = put_domain(t, get);
    return C::src(put) == p.apex && C::dst(put) == C::src(s.leg_p) && put_ok(s, p, put);
  }

  /// (id_X, π_{X'})
  static std::pair<Mor, Mor> identity(const Cospan& s) {
    Mor id = C::identity(C::src(s.leg));
    return {id, put_domain(s, id).p2};
  }

  /// get = get₂ ∘ get₁; put = put₁ ∘ ⟨π_X, put₂ ∘ ⟨get₁ ∘ π_X, π_{Z'}⟩⟩.
  static std::pair<Mor, Mor> compose(const Cospan& t, const Cospan& u,
                                     const std::pair<Mor, Mor>& c2, const std::pair<Mor, Mor>& c1) {
    Mor get = C::compose(c2.first, c1.first);
    Cone<Mor> p = put_domain(u, get);
    Cone<Mor> p2 = put_domain(u, c2.first);
    Cone<Mor> p1 = put_domain(t, c1.first);
    Mor y = C::compose(c2.second, C::pullback_pair(p2, C::compose(c1.first, p.p1), p.p2));
    return {get, C::compose(c1.second, C::pullback_pair(p1, p.p1, y))};
  }

  static std::size_t count(const Cospan& s, const Cospan& t) {
    std::size_t n = 0;
    for_each_lens(s, t, [&](const Mor&, const Mor&) { return ++n, true; });
    return n;
  }
};

}  // namespace dopt
