#include "dopt/optic.hpp"

#include <random>
#include <string>

#include "dopt/error.hpp"

namespace dopt {

namespace {

std::string show(const OpticObject& s) {
  return "(" + std::to_string(s.x) + "," + std::to_string(s.xp) + ")^" + std::to_string(s.a);
}

std::string show(const Witness& w) {
  return "<f=" + std::to_string(w.f) + " l=" + std::to_string(w.l) + " r=" + std::to_string(w.r) + ">";
}

std::string show(const OpticMorphism& m) {
  return show(m.src) + "->" + show(m.dst) + " class " + std::to_string(m.cls) + " " + show(m.witness);
}

}  // namespace

struct OpticCategory::HomData {
  OpticObject s, t;
  std::vector<std::vector<MorId>> lhom;  // per 1-cell k: L^A(X, k*Y)
  std::vector<std::vector<MorId>> rhom;  // per 1-cell j: R^A(j*Y', X')
  Bifunctor h;
  CoendResult coend;
};

OpticCategory::OpticCategory(IndexedPtr l, IndexedPtr r) : l_(std::move(l)), r_(std::move(r)) {
  if (!l_ || !r_) throw StructuralError("OpticCategory: missing indexed category");
  if (l_->base != r_->base)
    throw StructuralError("OpticCategory: L and R are indexed over different bicategories");
}

std::vector<OpticObject> OpticCategory::objects_over(ObjId a) const {
  std::vector<OpticObject> out;
  for (ObjId x = 0; x < l_->fiber(a).num_objects(); ++x)
    for (ObjId xp = 0; xp < r_->fiber(a).num_objects(); ++xp) out.push_back({a, x, xp});
  return out;
}

std::vector<OpticObject> OpticCategory::objects() const {
  std::vector<OpticObject> out;
  for (ObjId a = 0; a < base().num_objects; ++a) {
    auto part = objects_over(a);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

bool OpticCategory::valid_object(const OpticObject& s) const {
  return s.a < base().num_objects && s.x < l_->fiber(s.a).num_objects() &&
         s.xp < r_->fiber(s.a).num_objects();
}

const OpticCategory::HomData& OpticCategory::hom_data(const OpticObject& s,
                                                     const OpticObject& t) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto key = std::make_pair(s, t);
  if (auto it = cache_.find(key); it != cache_.end()) return *it->second;
  if (!valid_object(s) || !valid_object(t))
    throw StructuralError("optic_hom: object " + show(valid_object(s) ? t : s) + " does not exist");

  auto d = std::make_shared<HomData>();
  d->s = s;
  d->t = t;
  const FinBicategory& b = base();
  const ObjId a = s.a, bb = t.a;
  const FinCat& hom = b.hom(a, bb);
  const FinCat& la = l_->fiber(a);
  const FinCat& ra = r_->fiber(a);
  for (ObjId f = 0; f < hom.num_objects(); ++f) {
    d->lhom.push_back(la.hom(s.x, l_->pull_obj(a, bb, f, t.x)));
    d->rhom.push_back(ra.hom(r_->pull_obj(a, bb, f, t.xp), s.xp));
  }
  const HomData* raw = d.get();
  IndexedPtr lp = l_, rp = r_;
  d->h.index = b.homs[b.hom_index(a, bb)];
  d->h.size = [raw](ObjId j, ObjId k) { return raw->lhom[k].size() * raw->rhom[j].size(); };
  d->h.contra = [raw, rp](MorId m, ObjId, std::size_t x) {
    const FinBicategory& b = *rp->base;
    const FinCat& hom = b.hom(raw->s.a, raw->t.a);
    const FinCat& ra = rp->fiber(raw->s.a);
    ObjId j = hom.src(m), j2 = hom.dst(m);
    std::size_t nr2 = raw->rhom[j2].size();
    std::size_t li = x / nr2;
    MorId r = raw->rhom[j2][x % nr2];
    MorId r2 = ra.compose(r, rp->two_cell(raw->s.a, raw->t.a, m, raw->t.xp));
    return li * raw->rhom[j].size() + ra.hom_position(r2);
  };
  d->h.co = [raw, lp](MorId m, ObjId j, std::size_t x) {
    const FinBicategory& b = *lp->base;
    const FinCat& hom = b.hom(raw->s.a, raw->t.a);
    const FinCat& la = lp->fiber(raw->s.a);
    ObjId k = hom.src(m);
    std::size_t nr = raw->rhom[j].size();
    MorId l = raw->lhom[k][x / nr];
    MorId l2 = la.compose(lp->two_cell(raw->s.a, raw->t.a, m, raw->t.x), l);
    return la.hom_position(l2) * nr + x % nr;
  };
  d->coend = coend(d->h);
  cache_.emplace(key, d);
  return *d;
}

const CoendResult& OpticCategory::hom_coend(const OpticObject& s, const OpticObject& t) const {
  return hom_data(s, t).coend;
}

Witness OpticCategory::witness_of(const OpticObject& s, const OpticObject& t,
                                  const CoendElement& e) const {
  const HomData& d = hom_data(s, t);
  std::size_t nr = d.rhom[e.j].size();
  return {e.j, d.lhom[e.j][e.x / nr], d.rhom[e.j][e.x % nr]};
}

CoendElement OpticCategory::element_of(const OpticObject& s, const OpticObject& t,
                                       const Witness& w) const {
  const HomData& d = hom_data(s, t);
  const FinCat& la = l_->fiber(s.a);
  const FinCat& ra = r_->fiber(s.a);
  if (w.f >= d.lhom.size())
    throw StructuralError("witness " + show(w) + ": representative is not a 1-cell " + show(s) + "->" + show(t));
  ObjId fy = l_->pull_obj(s.a, t.a, w.f, t.x);
  ObjId fyp = r_->pull_obj(s.a, t.a, w.f, t.xp);
  if (w.l >= la.num_morphisms() || la.src(w.l) != s.x || la.dst(w.l) != fy)
    throw StructuralError("witness " + show(w) + ": forward map is not X -> f*Y for " + show(s) + "->" + show(t));
  if (w.r >= ra.num_morphisms() || ra.src(w.r) != fyp || ra.dst(w.r) != s.xp)
    throw StructuralError("witness " + show(w) + ": backward map is not f*Y' -> X' for " + show(s) + "->" + show(t));
  return {w.f, la.hom_position(w.l) * d.rhom[w.f].size() + ra.hom_position(w.r)};
}

std::vector<Witness> OpticCategory::class_witnesses(const OpticObject& s, const OpticObject& t,
                                                    std::size_t cls) const {
  std::vector<Witness> out;
  for (const auto& e : hom_coend(s, t).members(cls)) out.push_back(witness_of(s, t, e));
  return out;
}

OpticMorphism OpticCategory::make(const OpticObject& s, const OpticObject& t, const Witness& w) const {
  CoendElement e = element_of(s, t, w);
  return {s, t, hom_coend(s, t).class_of(e.j, e.x), w};
}

Witness OpticCategory::canonical_witness(const OpticObject& s, const OpticObject& t,
                                         std::size_t cls) const {
  return witness_of(s, t, hom_coend(s, t).canonical.at(cls));
}

OpticMorphism OpticCategory::morphism(const OpticObject& s, const OpticObject& t, std::size_t cls) const {
  return {s, t, cls, canonical_witness(s, t, cls)};
}

std::vector<OpticMorphism> OpticCategory::optic_hom(const OpticObject& s, const OpticObject& t) const {
  std::vector<OpticMorphism> out;
  const auto& c = hom_coend(s, t);
  for (std::size_t k = 0; k < c.num_classes(); ++k) out.push_back(morphism(s, t, k));
  return out;
}

std::size_t OpticCategory::hom_size(const OpticObject& s, const OpticObject& t) const {
  return hom_coend(s, t).num_classes();
}

OpticMorphism OpticCategory::optic_identity(const OpticObject& s) const {
  Witness w{base().unit(s.a), l_->theta_unit(s.a, s.x), r_->theta_unit_inv(s.a, s.xp)};
  return make(s, s, w);
}

Witness OpticCategory::compose_witness(const OpticObject& s, const OpticObject& t,
                                       const OpticObject& u, const Witness& w2,
                                       const Witness& w1) const {
  const FinBicategory& b = base();
  const ObjId a = s.a, bb = t.a, c = u.a;
  const FinCat& la = l_->fiber(a);
  const FinCat& ra = r_->fiber(a);
  ObjId fg = b.hcomp(a, bb, c, w1.f, w2.f);
  MorId l = la.compose(l_->theta(a, bb, c, w1.f, w2.f, u.x),
                       la.compose(l_->pull_mor(a, bb, w1.f, w2.l), w1.l));
  MorId r = ra.compose(w1.r, ra.compose(r_->pull_mor(a, bb, w1.f, w2.r),
                                        r_->theta_inv(a, bb, c, w1.f, w2.f, u.xp)));
  return {fg, l, r};
}

OpticMorphism OpticCategory::optic_compose(const OpticMorphism& m2, const OpticMorphism& m1) const {
  if (m1.dst != m2.src)
    throw StructuralError("optic_compose: codomain " + show(m1.dst) + " does not match domain " + show(m2.src));
  return make(m1.src, m2.dst, compose_witness(m1.src, m1.dst, m2.dst, m2.witness, m1.witness));
}

bool OpticCategory::optic_equal(const OpticMorphism& m1, const OpticMorphism& m2) const {
  if (m1.src != m2.src || m1.dst != m2.dst)
    throw StructuralError("optic_equal: endpoints differ (" + show(m1.src) + "->" + show(m1.dst) +
                          " vs " + show(m2.src) + "->" + show(m2.dst) + ")");
  return m1.cls == m2.cls;
}

ValidationReport OpticCategory::check_category_laws(std::size_t sample, std::uint64_t seed) const {
  ValidationReport rep;
  const auto objs = objects();
  std::mt19937_64 rng(seed);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

  auto unit_check = [&](const OpticMorphism& m) {
    auto left = optic_compose(optic_identity(m.dst), m);
    if (!optic_equal(left, m)) rep.law("left-unit", "id o m != m for m = " + show(m));
    auto right = optic_compose(m, optic_identity(m.src));
    if (!optic_equal(right, m)) rep.law("right-unit", "m o id != m for m = " + show(m));
  };
  auto assoc_check = [&](const OpticMorphism& m1, const OpticMorphism& m2, const OpticMorphism& m3) {
    auto lhs = optic_compose(optic_compose(m3, m2), m1);
    auto rhs = optic_compose(m3, optic_compose(m2, m1));
    if (!optic_equal(lhs, rhs))
      rep.law("associativity", "(m3 o m2) o m1 != m3 o (m2 o m1) for m1 = " + show(m1) +
                                   ", m2 = " + show(m2) + ", m3 = " + show(m3));
  };
  auto well_defined_check = [&](const OpticMorphism& m1, const OpticMorphism& m2) {
    std::size_t expect = optic_compose(m2, m1).cls;
    for (const auto& w1 : class_witnesses(m1.src, m1.dst, m1.cls))
      for (const auto& w2 : class_witnesses(m2.src, m2.dst, m2.cls)) {
        auto c = make(m1.src, m2.dst, compose_witness(m1.src, m1.dst, m2.dst, w2, w1));
        if (c.cls != expect) {
          rep.law("well-definedness", "witnesses " + show(w1) + ", " + show(w2) + " of " + show(m1) +
                                          ", " + show(m2) + " compose into class " + std::to_string(c.cls) +
                                          " instead of " + std::to_string(expect));
          return;
        }
      }
  };

  if (sample == 0) {
    for (const auto& s : objs)
      for (const auto& t : objs)
        for (const auto& m : optic_hom(s, t)) unit_check(m);
    for (const auto& s : objs)
      for (const auto& t : objs) {
        auto h1 = optic_hom(s, t);
        if (h1.empty()) continue;
        for (const auto& u : objs) {
          auto h2 = optic_hom(t, u);
          if (h2.empty()) continue;
          for (const auto& m1 : h1)
            for (const auto& m2 : h2) well_defined_check(m1, m2);
          for (const auto& v : objs) {
            auto h3 = optic_hom(u, v);
            for (const auto& m1 : h1)
              for (const auto& m2 : h2)
                for (const auto& m3 : h3) assoc_check(m1, m2, m3);
          }
        }
      }
    return rep;
  }

  auto random_morphism = [&](const OpticObject& s, const OpticObject& t) -> std::optional<OpticMorphism> {
    std::size_t n = hom_size(s, t);
    if (n == 0) return std::nullopt;
    return morphism(s, t, pick(n));
  };
  const std::size_t attempts = sample * 20;
  std::size_t done = 0;
  for (std::size_t i = 0; i < attempts && done < sample; ++i) {
    if (auto m = random_morphism(objs[pick(objs.size())], objs[pick(objs.size())])) {
      unit_check(*m);
      ++done;
    }
  }
  done = 0;
  for (std::size_t i = 0; i < attempts && done < sample; ++i) {
    const auto& s = objs[pick(objs.size())];
    const auto& t = objs[pick(objs.size())];
    const auto& u = objs[pick(objs.size())];
    const auto& v = objs[pick(objs.size())];
    auto m1 = random_morphism(s, t);
    auto m2 = random_morphism(t, u);
    if (!m1 || !m2) continue;
    well_defined_check(*m1, *m2);
    if (auto m3 = random_morphism(u, v)) assoc_check(*m1, *m2, *m3);
    ++done;
  }
  return rep;
}

}  // namespace dopt
