#include "cohomdyn/group.hpp"

#include <cmath>
#include <functional>
#include <set>
#include <sstream>

namespace cohomdyn {

MatrixGroup::MatrixGroup(TorusModel m, std::vector<TorusAut> g, std::vector<std::string> l)
    : model(m), gens(std::move(g)), labels(std::move(l)) {
  for (const auto& a : gens) {
    if (!(a.model == model)) throw PreconditionError("group: model mismatch");
    if (a.is_identity())
      throw PreconditionError("group: identity excluded from generator list");
  }
  if (labels.empty())
    for (size_t i = 0; i < gens.size(); ++i) labels.push_back("g" + std::to_string(i + 1));
  if (labels.size() != gens.size())
    throw PreconditionError("group: label count mismatch");
}

bool MatrixGroup::commuting() const {
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j)
      if (!(gens[i].A * gens[j].A == gens[j].A * gens[i].A)) return false;
  return true;
}

std::vector<Word> enumerate_words(int n_gens, int max_len) {
  std::vector<Word> out;
  Word cur;
  std::function<void()> rec = [&]() {
    if ((int)cur.size() >= max_len) return;
    for (int l = 1; l <= n_gens; ++l)
      for (int s : {l, -l}) {
        if (!cur.empty() && cur.back() == -s) continue;  // reduced words only
        cur.push_back(s);
        out.push_back(cur);
        rec();
        cur.pop_back();
      }
  };
  rec();
  return out;
}

std::string word_to_string(const Word& w, const std::vector<std::string>& labels) {
  if (w.empty()) return "e";
  std::ostringstream os;
  for (size_t i = 0; i < w.size(); ++i) {
    if (i) os << ".";
    int l = w[i];
    os << labels[std::abs(l) - 1] << (l < 0 ? "^-1" : "");
  }
  return os.str();
}

TorusAut word_aut(const MatrixGroup& g, const Word& w) {
  TorusAut acc = identity_aut(g.model);
  for (int letter : w) {
    const TorusAut& base = g.gens[std::abs(letter) - 1];
    TorusAut step = letter > 0 ? base : inverse(base);
    acc = compose(acc, step);  // apply acc first, then step
  }
  return acc;
}

EntropyAudit check_words_positive_entropy(const MatrixGroup& g, int word_cap) {
  EntropyAudit audit;
  for (const auto& w : enumerate_words((int)g.gens.size(), word_cap)) {
    TorusAut a = word_aut(g, w);
    if (a.is_identity()) continue;
    ++audit.words_checked;
    if (!is_positive_entropy(a)) {
      ++audit.zero_entropy_nonidentity;
      audit.all_positive = false;
    }
  }
  return audit;
}

namespace {

std::string mat_key(const GaussMat& m) {
  std::ostringstream os;
  os << m.rows << ";";
  for (const auto& v : m.a) os << gauss_to_string(v) << ",";
  return os.str();
}

}  // namespace

SolvabilityReport derived_series_probe(const MatrixGroup& g, int max_depth,
                                       int word_cap, int element_budget) {
  SolvabilityReport rep;
  std::vector<GaussMat> current;
  for (const auto& a : g.gens) current.push_back(a.A);
  for (int depth = 1; depth <= max_depth; ++depth) {
    if (current.empty()) {
      rep.solvable = true;
      rep.depth = depth - 1;
      rep.note = "derived series reached the trivial group";
      return rep;
    }
    // words over the current generating set with inverses
    std::vector<GaussMat> elems;
    std::set<std::string> seen;
    std::vector<GaussMat> alphabet;
    for (const auto& m : current) {
      alphabet.push_back(m);
      alphabet.push_back(inverse_field(m));
    }
    std::function<void(const GaussMat&, int)> grow = [&](const GaussMat& acc, int len) {
      if ((int)elems.size() >= element_budget) {
        rep.truncated = true;
        return;
      }
      if (len > 0 && seen.insert(mat_key(acc)).second) elems.push_back(acc);
      if (len >= word_cap) return;
      for (const auto& m : alphabet) grow(acc * m, len + 1);
    };
    grow(GaussMat::identity(g.model.k), 0);
    // commutators of all pairs generate the next derived subgroup
    std::vector<GaussMat> next;
    std::set<std::string> seen_next;
    for (size_t i = 0; i < elems.size() && (int)next.size() < element_budget; ++i)
      for (size_t j = 0; j < elems.size() && (int)next.size() < element_budget; ++j) {
        if (i == j) continue;
        GaussMat comm = inverse_field(elems[i]) * inverse_field(elems[j]) *
                        elems[i] * elems[j];
        if (comm.is_identity()) continue;
        if (seen_next.insert(mat_key(comm)).second) next.push_back(comm);
      }
    if (next.empty()) {
      rep.solvable = true;
      rep.depth = depth;
      rep.note = "commutators vanish at depth " + std::to_string(depth);
      return rep;
    }
    current = std::move(next);
  }
  rep.solvable = false;
  rep.note = "derived series still nontrivial at the depth cap";
  return rep;
}

// ---- ping-pong ----

RatMat ConeSpec::form() const {
  int n = (int)axis.size();
  Rat norm2(0);
  for (const auto& v : axis) norm2 += v * v;
  RatMat q(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) q(i, j) = axis[i] * axis[j];
    q(i, i) -= s * norm2;
  }
  return q;
}

namespace {

const std::vector<Rat>& multiplier_grid() {
  static std::vector<Rat> grid = [] {
    std::vector<Rat> g{Rat(0)};
    for (int j = -24; j <= 48; ++j) {
      Rat p = j >= 0 ? Rat(Int(1) << j) : make_rat(Int(1), Int(1) << (-j));
      g.push_back(p);
      g.push_back(p * make_rat(3, 2));
    }
    return g;
  }();
  return grid;
}

bool psd(const RatMat& m) { return signature(m).n_minus == 0; }
bool nd(const RatMat& m) {
  Inertia in = signature(m);
  return in.n_plus == 0 && in.n_zero == 0;
}

// exists lambda >= 0 with  B^T Q_to B - lambda Q_from  psd
bool containment_certified(const RatMat& b, const RatMat& q_from, const RatMat& q_to) {
  RatMat a = b.transpose() * q_to * b;
  for (const Rat& l : multiplier_grid())
    if (psd(a - q_from * l)) return true;
  return false;
}

// exists lambda >= 0 with  lambda Qa + Qb  negative definite
bool disjoint_certified(const RatMat& qa, const RatMat& qb) {
  for (const Rat& l : multiplier_grid())
    if (nd(qa * l + qb)) return true;
  return false;
}

RatMat mat_pow(const RatMat& m, int n) {
  RatMat acc = RatMat::identity(m.rows);
  for (int i = 0; i < n; ++i) acc = acc * m;
  return acc;
}

std::vector<double> dominant_direction(const std::vector<double>& m, int n,
                                       unsigned seed) {
  std::vector<double> v(n);
  unsigned s = seed;
  for (int i = 0; i < n; ++i) {
    s = s * 1664525u + 1013904223u;
    v[i] = ((s >> 8) % 1000) / 1000.0 + 0.1;
  }
  for (int step = 0; step < 600; ++step) {
    std::vector<double> w(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) w[i] += m[i * n + j] * v[j];
    double norm = 0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-300) return v;
    for (int i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return v;
}

std::vector<Rat> rationalize(const std::vector<double>& v) {
  std::vector<Rat> out;
  out.reserve(v.size());
  for (double x : v) out.push_back(make_rat((long)std::llround(x * (1 << 20)), 1 << 20));
  return out;
}

}  // namespace

bool verify_ping_pong(const TorusAut& g, const TorusAut& h,
                      const PingPongCertificate& cert) {
  RatMat tg = h11_real_action(g);
  RatMat th = h11_real_action(h);
  RatMat tgi = inverse_field(tg);
  RatMat thi = inverse_field(th);
  RatMat qgp = cert.g_plus.form(), qgm = cert.g_minus.form();
  RatMat qhp = cert.h_plus.form(), qhm = cert.h_minus.form();

  // the four cone pairs across the two players must be disjoint
  for (const RatMat* a : {&qgp, &qgm})
    for (const RatMat* b : {&qhp, &qhm})
      if (!disjoint_certified(*a, *b)) return false;

  // attracting cones absorb under one more application
  if (!containment_certified(tg, qgp, qgp)) return false;
  if (!containment_certified(tgi, qgm, qgm)) return false;
  if (!containment_certified(th, qhp, qhp)) return false;
  if (!containment_certified(thi, qhm, qhm)) return false;

  // N-th powers inject the other player's cones
  RatMat tgn = mat_pow(tg, cert.n), tgin = mat_pow(tgi, cert.n);
  RatMat thn = mat_pow(th, cert.n), thin = mat_pow(thi, cert.n);
  for (const RatMat* q : {&qhp, &qhm}) {
    if (!containment_certified(tgn, *q, qgp)) return false;
    if (!containment_certified(tgin, *q, qgm)) return false;
  }
  for (const RatMat* q : {&qgp, &qgm}) {
    if (!containment_certified(thn, *q, qhp)) return false;
    if (!containment_certified(thin, *q, qhm)) return false;
  }
  return true;
}

std::optional<PingPongCertificate> ping_pong_certificate(const TorusAut& g,
                                                         const TorusAut& h,
                                                         int n_max) {
  if (!is_positive_entropy(g) || !is_positive_entropy(h))
    throw PreconditionError("ping-pong needs positive-entropy elements");
  RatMat tg = h11_real_action(g);
  RatMat th = h11_real_action(h);
  RatMat tgi = inverse_field(tg), thi = inverse_field(th);
  int n = tg.rows;
  auto dbl = [&](const RatMat& m) {
    std::vector<double> d(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) d[i * n + j] = rat_to_double(m(i, j));
    return d;
  };
  auto transpose_dbl = [&](const std::vector<double>& m) {
    std::vector<double> r(n * n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) r[j * n + i] = m[i * n + j];
    return r;
  };
  std::vector<double> dg = dbl(tg), dgi = dbl(tgi), dh = dbl(th), dhi = dbl(thi);

  std::vector<std::vector<double>> axes = {
      dominant_direction(dg, n, 11), dominant_direction(dgi, n, 22),
      dominant_direction(dh, n, 33), dominant_direction(dhi, n, 44)};
  // left eigenvectors = normals of the non-attracting hyperplanes; the cone
  // half-angle must stay below the axis-to-hyperplane angles and half the
  // pairwise axis separations
  std::vector<std::vector<double>> normals = {
      dominant_direction(transpose_dbl(dg), n, 55),
      dominant_direction(transpose_dbl(dgi), n, 66),
      dominant_direction(transpose_dbl(dh), n, 77),
      dominant_direction(transpose_dbl(dhi), n, 88)};
  auto dot = [&](const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (int i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
  };
  double theta_min = 1.0;
  for (int a = 2; a < 4; ++a)  // h axes vs g hyperplanes and vice versa
    for (int w = 0; w < 2; ++w)
      theta_min = std::min(theta_min, std::asin(std::min(
                                          1.0, std::abs(dot(axes[a], normals[w])))));
  for (int a = 0; a < 2; ++a)
    for (int w = 2; w < 4; ++w)
      theta_min = std::min(theta_min, std::asin(std::min(
                                          1.0, std::abs(dot(axes[a], normals[w])))));
  for (int a = 0; a < 2; ++a)
    for (int b = 2; b < 4; ++b) {
      double c = std::min(1.0, std::abs(dot(axes[a], axes[b])));
      theta_min = std::min(theta_min, std::acos(c) / 2);
    }
  std::vector<Rat> ladder;
  if (theta_min > 1e-6) {
    double c = std::cos(0.35 * theta_min);
    ladder.push_back(make_rat((long)std::llround(c * c * (1 << 20)), 1 << 20));
  }
  for (int j = 3; j <= 16; ++j)
    ladder.push_back(Rat(1) - make_rat(Int(1), Int(1) << j));

  ConeSpec gp, gm, hp, hm;
  gp.axis = rationalize(axes[0]);
  gm.axis = rationalize(axes[1]);
  hp.axis = rationalize(axes[2]);
  hm.axis = rationalize(axes[3]);

  for (const Rat& s : ladder) {
    if (s <= 0 || s >= 1) continue;
    gp.s = gm.s = hp.s = hm.s = s;
    RatMat qgp = gp.form(), qgm = gm.form(), qhp = hp.form(), qhm = hm.form();
    bool base_ok = true;
    for (const RatMat* a : {&qgp, &qgm})
      for (const RatMat* b : {&qhp, &qhm})
        if (!disjoint_certified(*a, *b)) base_ok = false;
    if (base_ok) {
      base_ok = containment_certified(tg, qgp, qgp) &&
                containment_certified(tgi, qgm, qgm) &&
                containment_certified(th, qhp, qhp) &&
                containment_certified(thi, qhm, qhm);
    }
    if (!base_ok) continue;
    RatMat tgn = RatMat::identity(n), tgin = RatMat::identity(n);
    RatMat thn = RatMat::identity(n), thin = RatMat::identity(n);
    for (int N = 1; N <= n_max; ++N) {
      tgn = tgn * tg;
      tgin = tgin * tgi;
      thn = thn * th;
      thin = thin * thi;
      bool ok = true;
      for (const RatMat* q : {&qhp, &qhm}) {
        if (!containment_certified(tgn, *q, qgp)) ok = false;
        if (ok && !containment_certified(tgin, *q, qgm)) ok = false;
      }
      for (const RatMat* q : {&qgp, &qgm}) {
        if (ok && !containment_certified(thn, *q, qhp)) ok = false;
        if (ok && !containment_certified(thin, *q, qhm)) ok = false;
      }
      if (ok) {
        PingPongCertificate cert{N, gp, gm, hp, hm};
        return cert;
      }
    }
  }
  return std::nullopt;
}

// ---- joint eigenrays ----

namespace {

bool is_scalar_mat(const RatMat& m, Rat* scalar = nullptr) {
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      if (i != j && m(i, j) != 0) return false;
  for (int i = 1; i < m.rows; ++i)
    if (m(i, i) != m(0, 0)) return false;
  if (scalar) *scalar = m.rows ? m(0, 0) : Rat(0);
  return true;
}

Mat<NFElem> lift_to_field(const RatMat& m, const NumberField* f) {
  Mat<NFElem> out(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      NFElem e{m(i, j)};
      e.field = f;
      out(i, j) = e;
    }
  return out;
}

std::vector<NFElem> apply_mat(const Mat<NFElem>& m, const std::vector<NFElem>& v) {
  std::vector<NFElem> out(m.rows, NFElem(0L));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) out[i] += m(i, j) * v[j];
  return out;
}

// solve Kb X = W for X, Kb of full column rank (coordinates of W in the
// column span); throws when inconsistent
RatMat solve_in_span(const RatMat& kb, const RatMat& w) {
  int n = kb.rows, m = kb.cols, c = w.cols;
  RatMat aug(n, m + c);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) aug(i, j) = kb(i, j);
    for (int j = 0; j < c; ++j) aug(i, m + j) = w(i, j);
  }
  auto pivots = rref(aug);
  for (int p : pivots)
    if (p >= m) throw CertificationError("subspace not invariant");
  if ((int)pivots.size() != m)
    throw PreconditionError("solve_in_span: basis not of full rank");
  RatMat x(m, c);
  for (int r = 0; r < m; ++r)
    for (int j = 0; j < c; ++j) x(r, j) = aug(r, m + j);
  return x;
}

void collect_rays(const std::vector<RatMat>& mats, std::vector<JointRay>& out) {
  int n = mats.front().rows;
  // all scalars: every coordinate line is a joint eigenray
  int pivot_mat = -1;
  for (size_t i = 0; i < mats.size(); ++i)
    if (!is_scalar_mat(mats[i])) {
      pivot_mat = (int)i;
      break;
    }
  if (pivot_mat < 0) {
    for (int col = 0; col < n; ++col) {
      JointRay ray;
      ray.vec.assign(n, NFElem(0L));
      ray.vec[col] = NFElem(1L);
      for (const auto& m : mats) {
        Rat s;
        is_scalar_mat(m, &s);
        ray.eigenvalues.push_back(NFElem(s));
      }
      out.push_back(std::move(ray));
    }
    return;
  }
  const RatMat& m0 = mats[pivot_mat];
  auto cp = char_poly_int(m0);
  if (!cp)
    throw CertificationError("joint_eigenrays: characteristic polynomial not integral");
  std::vector<IntPoly> factors = factor_monic(*cp);
  std::set<std::string> seen;
  for (const auto& f : factors) {
    std::ostringstream key;
    for (const auto& c : f.c) key << c << ",";
    if (!seen.insert(key.str()).second) continue;  // multiplicity collapsed

    if (f.degree() == 1) {
      Rat lambda = -Rat(f.c[0]);
      RatMat shifted = m0;
      for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
      auto kernel = null_space(shifted);
      if (kernel.empty()) continue;
      if (kernel.size() == 1) {
        JointRay ray;
        for (const auto& x : kernel[0]) ray.vec.push_back(NFElem(x));
        bool ok = true;
        for (const auto& m : mats) {
          auto w = apply_mat(lift_to_field(m, nullptr), ray.vec);
          int piv = -1;
          for (int i = 0; i < n; ++i)
            if (!ray.vec[i].is_zero()) {
              piv = i;
              break;
            }
          NFElem lam = w[piv] / ray.vec[piv];
          for (int i = 0; i < n && ok; ++i)
            if (!(w[i] == lam * ray.vec[i])) ok = false;
          if (!ok) break;
          ray.eigenvalues.push_back(lam);
        }
        if (ok) out.push_back(std::move(ray));
        continue;
      }
      // multi-dimensional rational eigenspace: restrict and recurse
      RatMat kb(n, (int)kernel.size());
      for (size_t j = 0; j < kernel.size(); ++j)
        for (int i = 0; i < n; ++i) kb(i, (int)j) = kernel[j][i];
      std::vector<RatMat> restricted;
      bool invariant = true;
      for (const auto& m : mats) {
        try {
          restricted.push_back(solve_in_span(kb, m * kb));
        } catch (const CertificationError&) {
          invariant = false;
          break;
        }
      }
      if (!invariant) continue;
      std::vector<JointRay> sub;
      collect_rays(restricted, sub);
      for (auto& ray : sub) {
        // map back: v = Kb v'
        std::vector<NFElem> mapped(n, NFElem(0L));
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < kb.cols; ++j) {
            NFElem kij{kb(i, j)};
            kij.field = ray.field.get();
            mapped[i] += kij * ray.vec[j];
          }
        ray.vec = std::move(mapped);
        out.push_back(std::move(ray));
      }
      continue;
    }

    // irreducible factor of degree >= 2
    auto field = std::make_shared<NumberField>(f);
    if (field->real_root_count() == 0) continue;  // no real embeddings, no rays
    Mat<NFElem> shifted = lift_to_field(m0, field.get());
    NFElem x = NFElem::generator(field.get());
    for (int i = 0; i < n; ++i) shifted(i, i) -= x;
    auto kernel = null_space(shifted);
    if (kernel.size() != 1) continue;  // irrational multi-dim block: unsupported
    JointRay ray;
    ray.field = field;
    ray.vec = kernel[0];
    bool ok = true;
    for (const auto& m : mats) {
      auto w = apply_mat(lift_to_field(m, field.get()), ray.vec);
      int piv = -1;
      for (int i = 0; i < n; ++i)
        if (!ray.vec[i].is_zero()) {
          piv = i;
          break;
        }
      NFElem lam = w[piv] / ray.vec[piv];
      for (int i = 0; i < n && ok; ++i)
        if (!(w[i] == lam * ray.vec[i])) ok = false;
      if (!ok) break;
      ray.eigenvalues.push_back(lam);
    }
    if (ok) out.push_back(std::move(ray));
  }
}

std::vector<RatMat> transposed_real_actions(const MatrixGroup& g) {
  std::vector<RatMat> mats;
  for (const auto& aut : g.gens) {
    RatMat m(g.model.k, g.model.k);
    for (int i = 0; i < g.model.k; ++i)
      for (int j = 0; j < g.model.k; ++j) {
        const GaussRat& v = aut.A(i, j);
        if (v.im != 0)
          throw PreconditionError(
              "unsupported: eigenray analysis needs real integer matrices");
        m(j, i) = v.re;  // transpose: invariant rays come from A^T eigenvectors
      }
    mats.push_back(std::move(m));
  }
  return mats;
}

// normalize the eigenvector so its first nonzero coordinate is 1
void normalize_ray(JointRay& ray) {
  for (auto& v : ray.vec)
    if (!v.is_zero()) {
      NFElem inv = v.inverse();
      for (auto& w : ray.vec) w = w * inv;
      return;
    }
}

// certified |embed| as a positive interval, refined until it excludes 0
RatInterval abs_embed(const NFElem& v, int root, const Rat& width) {
  for (Rat w = width;; w /= 16) {
    RatInterval iv = v.embed(root, w);
    if (iv.strictly_positive()) return iv;
    if (iv.strictly_negative()) return -iv;
    if (w < make_rat(1, Int(1) << 200))
      throw CertificationError("abs_embed: cannot separate from zero");
  }
}

int ray_root_count(const JointRay& ray) {
  return ray.field ? ray.field->real_root_count() : 1;
}

}  // namespace

std::vector<JointRay> joint_eigenrays(const std::vector<RatMat>& mats) {
  if (mats.empty()) throw PreconditionError("joint_eigenrays: no matrices");
  std::vector<JointRay> out;
  collect_rays(mats, out);
  for (auto& r : out) normalize_ray(r);
  return out;
}

CommonEigenray common_eigenray(const MatrixGroup& g) {
  CommonEigenray out;
  if (g.gens.empty()) {
    // identity group: the standard Kahler ray by convention
    out.exact_rational = true;
    out.ray.vec.assign(g.model.k, NFElem(0L));
    out.ray.vec[0] = NFElem(1L);
    return out;
  }
  std::vector<RatMat> mats = transposed_real_actions(g);
  std::vector<JointRay> rays;
  if (g.commuting()) {
    rays = joint_eigenrays(mats);
  } else {
    // rational-eigenvalue path: joint rays still come from intersected
    // rational kernels; anything else is out of scope here
    rays = joint_eigenrays(mats);
    std::vector<JointRay> rational_only;
    for (auto& r : rays)
      if (!r.field) rational_only.push_back(std::move(r));
    rays = std::move(rational_only);
    // a rational ray of the first matrix must actually be joint; the
    // verification inside collect_rays already ensured that
  }
  if (rays.empty())
    throw PreconditionError(
        "common_eigenray: no joint eigenvector meets the cone (unsupported input)");
  // deterministic choice: maximize |lambda_{g0}| over (ray, embedding)
  int best_ray = -1, best_root = 0;
  RatInterval best_val;
  Rat width = make_rat(1, 1L << 30);
  for (size_t r = 0; r < rays.size(); ++r)
    for (int root = 0; root < ray_root_count(rays[r]); ++root) {
      RatInterval v = abs_embed(rays[r].eigenvalues[0], root, width);
      if (best_ray < 0 || v.lo > best_val.hi) {
        best_ray = (int)r;
        best_root = root;
        best_val = v;
      }
    }
  out.ray = rays[best_ray];
  out.root_index = best_root;
  out.exact_rational = out.ray.field == nullptr;
  for (const auto& lam : out.ray.eigenvalues) {
    RatInterval l = lam.embed(best_root, width);
    out.characters.push_back(l * l);
  }
  return out;
}

// ---- invariant chain ----

namespace {

// pullback of a tensor-coefficient class under a real automorphism
BasisClass<TensorElem> pullback_tensor(const TorusAut& f,
                                       const BasisClass<TensorElem>& c,
                                       const TensorRing* ring) {
  int k = c.k;
  auto sets_p = combinations(k, c.p);
  auto sets_q = combinations(k, c.q);
  GaussMat ep = exterior_power(f.A, c.p);
  GaussMat eq = exterior_power(f.A, c.q);
  BasisClass<TensorElem> out(k, c.p, c.q);
  for (const auto& [key, v] : c.terms) {
    int ri = lex_rank(key.first, k);
    int rj = lex_rank(key.second, k);
    for (size_t i2 = 0; i2 < sets_p.size(); ++i2) {
      const GaussRat& mi = ep(ri, (int)i2);
      if (mi.is_zero()) continue;
      for (size_t j2 = 0; j2 < sets_q.size(); ++j2) {
        const GaussRat& mj = eq(rj, (int)j2);
        if (mj.is_zero()) continue;
        if (mi.im != 0 || mj.im != 0)
          throw PreconditionError("tensor pullback needs a real matrix");
        TensorElem scaled = v;
        Rat factor = mi.re * mj.re;
        for (auto& cc : scaled.coef) cc *= factor;
        out.add_term(sets_p[i2], sets_q[j2], scaled);
      }
    }
  }
  (void)ring;
  return out;
}

// certified nonzero test for a tensor-coefficient class at given roots
bool certified_nonzero(const BasisClass<TensorElem>& c, const std::vector<int>& roots) {
  for (const auto& [key, v] : c.terms) {
    for (Rat w = make_rat(1, 1 << 10); w > make_rat(1, Int(1) << 160); w /= 256) {
      RatInterval iv = v.eval(roots, w);
      if (!iv.contains_zero()) return true;
      if (iv.is_point()) break;  // exactly zero coefficient
    }
  }
  return false;
}

const NumberField* rational_axis() {
  static NumberField axis(IntPoly(std::vector<Int>{Int(0), Int(1)}));  // m(x) = x
  return &axis;
}

}  // namespace

InvariantChain invariant_chain(const MatrixGroup& g, int word_cap) {
  if (g.gens.empty())
    throw PreconditionError("invariant_chain: group must have positive entropy");
  if (!g.commuting())
    throw PreconditionError("invariant_chain: generators must commute");
  EntropyAudit audit = check_words_positive_entropy(g, word_cap);
  if (!audit.all_positive)
    throw PreconditionError(
        "invariant_chain: a nonidentity word has zero entropy");

  int k = g.model.k;
  std::vector<RatMat> mats = transposed_real_actions(g);
  std::vector<JointRay> rays = joint_eigenrays(mats);
  if (rays.empty())
    throw CertificationError("invariant_chain: no joint eigenrays found");

  // candidate (ray, root) pool ordered by descending |lambda_{g0}|
  struct Cand {
    int ray;
    int root;
    RatInterval strength;
  };
  std::vector<Cand> pool;
  Rat width = make_rat(1, 1L << 40);
  for (size_t r = 0; r < rays.size(); ++r)
    for (int root = 0; root < ray_root_count(rays[r]); ++root)
      pool.push_back({(int)r, root, abs_embed(rays[r].eigenvalues[0], root, width)});
  std::sort(pool.begin(), pool.end(), [](const Cand& a, const Cand& b) {
    if (a.strength.lo != b.strength.lo) return a.strength.lo > b.strength.lo;
    return std::make_pair(a.ray, a.root) < std::make_pair(b.ray, b.root);
  });

  // greedy selection of k-1 levels with independent eigenvectors: the wedge
  // of distinct rank-one rays is nonzero iff the vectors are independent,
  // screened numerically here and certified exactly below
  std::vector<int> chosen;  // indices into pool
  std::vector<std::vector<double>> dvecs;
  auto approx_vec = [&](const Cand& c) {
    std::vector<double> v;
    for (const auto& e : rays[c.ray].vec) {
      RatInterval iv = e.embed(c.root, make_rat(1, 1L << 40));
      v.push_back(rat_to_double(iv.mid()));
    }
    return v;
  };
  auto independent = [&](const std::vector<double>& v) {
    // Gram determinant screen against already chosen directions
    std::vector<std::vector<double>> all = dvecs;
    all.push_back(v);
    int m = (int)all.size();
    std::vector<std::vector<double>> gram(m, std::vector<double>(m));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        double s = 0;
        for (int t = 0; t < k; ++t) s += all[i][t] * all[j][t];
        gram[i][j] = s;
      }
    // determinant by elimination
    double det = 1;
    for (int c = 0; c < m; ++c) {
      int piv = c;
      for (int r = c; r < m; ++r)
        if (std::abs(gram[r][c]) > std::abs(gram[piv][c])) piv = r;
      if (std::abs(gram[piv][c]) < 1e-9) return false;
      std::swap(gram[piv], gram[c]);
      det *= gram[c][c];
      for (int r = c + 1; r < m; ++r) {
        double f = gram[r][c] / gram[c][c];
        for (int cc = c; cc < m; ++cc) gram[r][cc] -= f * gram[c][cc];
      }
    }
    return std::abs(det) > 1e-9;
  };
  for (const auto& c : pool) {
    if ((int)chosen.size() == k - 1) break;
    auto v = approx_vec(c);
    if (!independent(v)) continue;
    chosen.push_back((int)(&c - pool.data()));
    dvecs.push_back(v);
  }
  if ((int)chosen.size() != k - 1)
    throw CertificationError("invariant_chain: could not assemble k-1 levels");

  InvariantChain chain;
  chain.rays = rays;
  auto ring = std::make_shared<TensorRing>();
  for (int idx : chosen) {
    const JointRay& ray = rays[pool[idx].ray];
    ring->axes.push_back(ray.field ? ray.field.get() : rational_axis());
  }
  chain.ring = ring;

  std::vector<int> root_choice;
  for (int idx : chosen) root_choice.push_back(pool[idx].root);

  // Theta_p built level by level
  BasisClass<TensorElem> theta(k, 0, 0);
  theta.add_term({}, {}, TensorElem::constant(ring.get(), Rat(1)));
  for (int level = 0; level < k - 1; ++level) {
    const Cand& cand = pool[chosen[level]];
    const JointRay& ray = rays[cand.ray];
    // L = omega(v v^T) with the (i/2)^1 prefactor tracked implicitly
    BasisClass<TensorElem> ell(k, 1, 1);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) {
        NFElem prod = ray.vec[a] * ray.vec[b];
        if (prod.is_zero()) continue;
        ell.add_term({a}, {b}, TensorElem::embed(ring.get(), level, prod.rep));
      }
    theta = wedge(theta, ell);
    if (!certified_nonzero(theta, root_choice))
      throw CertificationError("invariant_chain: Theta_p vanished at level " +
                               std::to_string(level + 1));
    chain.thetas.push_back(theta);

    ChainLevel cl;
    cl.ray_index = cand.ray;
    cl.root_index = cand.root;
    chain.levels.push_back(cl);
    std::vector<NFElem> lams;
    for (size_t j = 0; j < g.gens.size(); ++j) lams.push_back(ray.eigenvalues[j]);
    chain.level_eigenvalues.push_back(std::move(lams));
  }

  // exact verification g*(Theta_p) = chi_p(g) Theta_p in the tensor ring
  for (size_t j = 0; j < g.gens.size(); ++j) {
    TensorElem chi = TensorElem::constant(ring.get(), Rat(1));
    for (int p = 1; p <= k - 1; ++p) {
      TensorElem lam =
          TensorElem::embed(ring.get(), p - 1, chain.level_eigenvalues[p - 1][j].rep);
      chi = chi * lam * lam;
      BasisClass<TensorElem> lhs = pullback_tensor(g.gens[j], chain.thetas[p - 1], ring.get());
      BasisClass<TensorElem> rhs(k, 0, 0);
      {
        // rhs = chi * Theta_p
        rhs = BasisClass<TensorElem>(k, chain.thetas[p - 1].p, chain.thetas[p - 1].q);
        for (const auto& [key, v] : chain.thetas[p - 1].terms)
          rhs.add_term(key.first, key.second, v * chi);
      }
      if (!(lhs == rhs))
        throw CertificationError("invariant_chain: eigen-identity failed at level " +
                                 std::to_string(p));
    }
  }

  // characters as certified intervals
  for (int p = 1; p <= k - 1; ++p) {
    chain.levels[p - 1].characters.clear();
    for (size_t j = 0; j < g.gens.size(); ++j) {
      RatInterval chi(Rat(1));
      for (int t = 0; t < p; ++t) {
        const NFElem& lam = chain.level_eigenvalues[t][j];
        RatInterval l = lam.embed(chain.levels[t].root_index, width);
        chi = chi * l * l;
      }
      chain.levels[p - 1].characters.push_back(chi);
    }
  }
  return chain;
}

// ---- phi ----

namespace {

// eigenvalue of a word at chain level t, exact in the level field
NFElem word_eigenvalue(const InvariantChain& chain, const Word& w, int level) {
  const auto& lams = chain.level_eigenvalues[level];
  NFElem acc(1L);
  if (!lams.empty()) acc.field = lams[0].field;
  for (int letter : w) {
    const NFElem& lam = lams[std::abs(letter) - 1];
    acc = acc * (letter > 0 ? lam : lam.inverse());
  }
  return acc;
}

bool square_is_one(const NFElem& v) {
  NFElem sq = v * v;
  return sq.is_rational() && sq.rep.coeff(0) == 1;
}

PhiVector phi_of_word(const MatrixGroup& g, const InvariantChain& chain, const Word& w,
                      const Rat& width) {
  int k = g.model.k;
  PhiVector pv;
  pv.word = w;
  pv.exactly_zero = true;
  std::vector<RatInterval> level_logs;
  for (int t = 0; t < k - 1; ++t) {
    NFElem lam = word_eigenvalue(chain, w, t);
    if (square_is_one(lam)) {
      level_logs.push_back(RatInterval(Rat(0)));
      continue;
    }
    pv.exactly_zero = false;
    RatInterval a = abs_embed(lam, chain.levels[t].root_index, width);
    level_logs.push_back(interval_log(a) * Rat(2));
  }
  RatInterval acc(Rat(0));
  for (int p = 0; p < k - 1; ++p) {
    acc = acc + level_logs[p];
    pv.coords.push_back(acc);
  }
  return pv;
}

}  // namespace

PhiImage phi_map(const MatrixGroup& g, const InvariantChain& chain, int word_cap) {
  PhiImage img;
  Rat width = make_rat(1, 1L << 48);
  auto words = enumerate_words((int)g.gens.size(), word_cap);
  bool have_margin = false;
  for (const auto& w : words) {
    PhiVector pv = phi_of_word(g, chain, w, width);
    if (!pv.exactly_zero) {
      RatInterval norm = interval_norm2(pv.coords, 64);
      if (!have_margin || norm.lo < img.discreteness_margin.lo) {
        img.discreteness_margin = norm;
        have_margin = true;
      }
    }
    img.vectors.push_back(std::move(pv));
  }
  // rank of the generator phi-matrix, certified via interval minors; the
  // dimension bound rank <= k-1 is automatic
  int k = g.model.k;
  int n = (int)g.gens.size();
  std::vector<std::vector<RatInterval>> cols;
  for (int j = 0; j < n; ++j) {
    Word w{j + 1};
    cols.push_back(phi_of_word(g, chain, w, width).coords);
  }
  int maxr = std::min(k - 1, n);
  for (int r = maxr; r >= 1 && !img.rank_certified; --r) {
    for (const auto& rows : combinations(k - 1, r)) {
      for (const auto& cs : combinations(n, r)) {
        std::vector<std::vector<RatInterval>> minor(r, std::vector<RatInterval>(r));
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j) minor[i][j] = cols[cs[j]][rows[i]];
        RatInterval det = interval_det(minor);
        if (!det.contains_zero()) {
          img.rank = r;
          img.rank_certified = true;
          break;
        }
      }
      if (img.rank_certified) break;
    }
  }
  return img;
}

RankBoundCheck rank_bound_check(const MatrixGroup& g, const InvariantChain& chain,
                                int word_cap) {
  PhiImage img = phi_map(g, chain, word_cap);
  RankBoundCheck out;
  out.rank = img.rank;
  out.bound = g.model.k - kodaira_dimension_torus - 1;
  out.certified = img.rank_certified;
  out.within_bound = img.rank <= out.bound;
  return out;
}

std::vector<PhiBoundCheck> phi_bound_check(const MatrixGroup& g,
                                           const InvariantChain& chain, int word_cap) {
  std::vector<PhiBoundCheck> out;
  int k = g.model.k;
  auto words = enumerate_words((int)g.gens.size(), word_cap);
  words.insert(words.begin(), Word{});
  for (const auto& w : words) {
    PhiBoundCheck row;
    row.word = w;
    TorusAut a = word_aut(g, w);
    RadiusBound d = dynamical_degree(a, k - 1);
    RatInterval half_log = d.exactly_one
                               ? RatInterval(Rat(0))
                               : interval_log(d.enclosure) * make_rat(1, 2);
    row.half_log_dk1 = half_log;
    for (Rat width = make_rat(1, 1L << 48);; width /= Int(1) << 32) {
      PhiVector pv = phi_of_word(g, chain, w, width);
      row.phi_norm = pv.exactly_zero ? RatInterval(Rat(0))
                                     : interval_norm2(pv.coords, 96);
      if (pv.exactly_zero && d.exactly_one) {
        row.holds = true;
        row.equality_case = true;
        break;
      }
      if (row.phi_norm.lo >= half_log.hi) {
        row.holds = true;
        break;
      }
      if (width < make_rat(1, Int(1) << 200)) break;  // honest failure
    }
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<KernelCheckRow> zero_entropy_kernel_check(const MatrixGroup& g,
                                                      const InvariantChain& chain,
                                                      int word_cap) {
  std::vector<KernelCheckRow> out;
  int k = g.model.k;
  auto words = enumerate_words((int)g.gens.size(), word_cap);
  words.insert(words.begin(), Word{});
  for (const auto& w : words) {
    KernelCheckRow row;
    row.word = w;
    row.positive_entropy = is_positive_entropy(word_aut(g, w));
    row.phi_zero = true;
    for (int t = 0; t < k - 1; ++t)
      if (!square_is_one(word_eigenvalue(chain, w, t))) {
        row.phi_zero = false;
        break;
      }
    row.consistent = row.phi_zero == !row.positive_entropy;
    out.push_back(std::move(row));
  }
  return out;
}

GroupAnalysis analyze_group(const MatrixGroup& g, int word_cap) {
  GroupAnalysis ga;
  ga.word_cap = word_cap;
  ga.commuting = g.commuting();
  ga.solvability = derived_series_probe(g, 4, 2);
  ga.entropy_audit = check_words_positive_entropy(g, word_cap);
  if (!ga.solvability.solvable && g.gens.size() >= 2) {
    // attach a free-subgroup certificate when one is found
    for (size_t i = 0; i < g.gens.size() && !ga.ping_pong; ++i)
      for (size_t j = i + 1; j < g.gens.size() && !ga.ping_pong; ++j) {
        if (!is_positive_entropy(g.gens[i]) || !is_positive_entropy(g.gens[j])) continue;
        ga.ping_pong = ping_pong_certificate(g.gens[i], g.gens[j], 6);
      }
  }
  if (ga.commuting && ga.entropy_audit.all_positive && !g.gens.empty()) {
    try {
      InvariantChain chain = invariant_chain(g, word_cap);
      ga.chain_built = true;
      PhiImage img = phi_map(g, chain, word_cap);
      ga.phi_rank = img.rank;
      ga.rank_certified = img.rank_certified;
      ga.rank_saturates = img.rank == g.model.k - 1;
      ga.discreteness_margin = img.discreteness_margin;
      ga.phi_vectors = img.vectors;
      ga.bound_checks = phi_bound_check(g, chain, word_cap);
      ga.phi_bound_all_hold = true;
      for (const auto& r : ga.bound_checks)
        if (!r.holds) ga.phi_bound_all_hold = false;
      ga.kernel_rows = zero_entropy_kernel_check(g, chain, word_cap);
      ga.kernel_all_consistent = true;
      for (const auto& r : ga.kernel_rows)
        if (!r.consistent) ga.kernel_all_consistent = false;
    } catch (const std::exception& e) {
      ga.chain_error = e.what();
    }
  }
  return ga;
}

}  // namespace cohomdyn
