#include "cohomdyn/units.hpp"

#include <functional>
#include <set>
#include <sstream>

namespace cohomdyn {

TotallyRealField::TotallyRealField(IntPoly poly, int max_degree) {
  if (!is_monic(poly)) throw PreconditionError("field polynomial must be monic");
  if (poly.degree() < 2 || poly.degree() > max_degree)
    throw PreconditionError("field degree out of the supported range");
  if (!is_totally_real(poly))
    throw PreconditionError("field polynomial is not totally real");
  field = std::make_shared<NumberField>(std::move(poly));
}

IntPoly parse_int_poly(const std::string& s) {
  // terms like "x^3", "-3x", "+2", separated by +/-; spaces ignored
  std::string t;
  for (char c : s)
    if (!isspace((unsigned char)c)) t.push_back(c);
  if (t.empty()) throw PreconditionError("empty polynomial string");
  std::vector<std::pair<Int, int>> terms;
  size_t i = 0;
  while (i < t.size()) {
    int sign = 1;
    while (i < t.size() && (t[i] == '+' || t[i] == '-')) {
      if (t[i] == '-') sign = -sign;
      ++i;
    }
    if (i >= t.size()) throw PreconditionError("dangling sign in polynomial");
    std::string digits;
    while (i < t.size() && isdigit((unsigned char)t[i])) digits.push_back(t[i++]);
    Int coeff = digits.empty() ? Int(1) : Int(digits);
    if (sign < 0) coeff = -coeff;
    int exp = 0;
    if (i < t.size() && (t[i] == 'x' || t[i] == 'X')) {
      ++i;
      exp = 1;
      if (i < t.size() && t[i] == '^') {
        ++i;
        std::string e;
        while (i < t.size() && isdigit((unsigned char)t[i])) e.push_back(t[i++]);
        if (e.empty()) throw PreconditionError("bad exponent in polynomial");
        exp = std::stoi(e);
      }
    } else if (digits.empty()) {
      throw PreconditionError("bad polynomial term near position " + std::to_string(i));
    }
    terms.push_back({coeff, exp});
  }
  int deg = 0;
  for (auto& [c, e] : terms) deg = std::max(deg, e);
  std::vector<Int> coeffs(deg + 1, Int(0));
  for (auto& [c, e] : terms) coeffs[e] += c;
  return IntPoly(std::move(coeffs));
}

namespace {

bool is_squarefree_int(const Int& d) {
  Int n = d;
  for (Int p(2); p * p <= n; ++p)
    if (n % (p * p) == 0) return false;
  return true;
}

bool perfect_square(const Int& n, Int* root) {
  if (n < 0) return false;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

}  // namespace

QuadUnit fundamental_unit_quadratic(const Int& d) {
  if (d <= 1) throw PreconditionError("d must be a squarefree integer > 1");
  if (!is_squarefree_int(d)) throw PreconditionError("d must be squarefree");
  if (d % 4 == 1) {
    // maximal order Z[(1+sqrt d)/2]: smallest (a + b sqrt d)/2 > 1 with
    // a^2 - d b^2 = +-4 and a = b mod 2
    for (Int b(1);; ++b) {
      for (int target : {-4, 4}) {
        Int a2 = d * b * b + target;
        Int a;
        if (perfect_square(a2, &a) && (a - b) % 2 == 0 && a > 0) {
          QuadUnit u;
          u.a = a;
          u.b = b;
          u.denom = 2;
          u.norm = target / 4;
          return u;
        }
      }
    }
  }
  // continued fraction of sqrt(d): period ends when the partial quotient
  // reaches 2 a0; the previous convergent solves x^2 - d y^2 = (-1)^period
  Int a0;
  mpz_sqrt(a0.get_mpz_t(), d.get_mpz_t());
  Int m(0), den(1), a(a0);
  Int p_prev(1), p_cur(a0), q_prev(0), q_cur(1);
  int period = 0;
  for (;;) {
    m = den * a - m;
    den = (d - m * m) / den;
    a = (a0 + m) / den;
    ++period;
    if (a == 2 * a0) break;
    Int p_next = a * p_cur + p_prev;
    Int q_next = a * q_cur + q_prev;
    p_prev = p_cur;
    p_cur = p_next;
    q_prev = q_cur;
    q_cur = q_next;
    if (period > 100000) throw CertificationError("continued fraction did not close");
  }
  QuadUnit u;
  u.a = p_cur;
  u.b = q_cur;
  u.denom = 1;
  u.norm = period % 2 == 1 ? -1 : 1;
  // consistency: a^2 - d b^2 must equal the predicted norm
  if (u.a * u.a - d * u.b * u.b != u.norm)
    throw CertificationError("Pell solution failed verification");
  return u;
}

std::vector<RatInterval> log_embedding_row(const NFElem& u, const Rat& width) {
  const NumberField* f = u.field;
  if (!f) throw PreconditionError("log embedding of a rational constant");
  std::vector<RatInterval> row;
  for (int i = 0; i < f->real_root_count(); ++i) {
    // refine until the embedding is separated from zero, then take log|.|
    RatInterval v = u.embed(i, width);
    Rat w = width;
    while (v.contains_zero()) {
      w /= 256;
      if (w < make_rat(1, Int(1) << 300))
        throw CertificationError("embedding refinement exhausted");
      v = u.embed(i, w);
    }
    if (v.strictly_negative()) v = -v;
    row.push_back(interval_log(v));
  }
  return row;
}

namespace {

// certified-nonzero r x r log-minor test against rows 0..k-2 (dropping the
// last embedding; rows of the log matrix sum to zero so the rank is intact)
bool rank_increases(const std::vector<std::vector<RatInterval>>& chosen_rows,
                    const std::vector<RatInterval>& cand_row) {
  int r = (int)chosen_rows.size() + 1;
  int cols = (int)cand_row.size();
  if (r > cols) return false;
  for (const auto& pick : combinations(cols, r)) {
    std::vector<std::vector<RatInterval>> minor(r, std::vector<RatInterval>(r));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        const auto& row = i + 1 < r ? chosen_rows[i] : cand_row;
        minor[i][j] = row[pick[j]];
      }
    if (!interval_det(minor).contains_zero()) return true;
  }
  return false;
}

// exact multiplicative dependence u^b = +- prod chosen^{e_i}, small exponents
bool provably_dependent(const NFElem& cand, const std::vector<NFElem>& chosen,
                        int exp_cap) {
  std::vector<std::vector<int>> exps{{}};
  for (size_t i = 0; i < chosen.size(); ++i) {
    std::vector<std::vector<int>> next;
    for (auto& e : exps)
      for (int v = -exp_cap; v <= exp_cap; ++v) {
        auto e2 = e;
        e2.push_back(v);
        next.push_back(std::move(e2));
      }
    exps = std::move(next);
  }
  for (int b = 1; b <= exp_cap; ++b) {
    NFElem cb = cand.pow(b);
    for (const auto& e : exps) {
      NFElem prod(1L);
      prod.field = cand.field;
      for (size_t i = 0; i < chosen.size(); ++i) prod = prod * chosen[i].pow(e[i]);
      if (cb == prod || cb == -prod) return true;
    }
  }
  return false;
}

std::string key_of(const NFElem& u) {
  std::ostringstream os;
  for (int i = 0; i <= u.rep.degree(); ++i) os << rat_to_string(u.rep.coeff(i)) << ",";
  return os.str();
}

}  // namespace

UnitSystem unit_search(const TotallyRealField& f, long height_bound) {
  const NumberField* F = f.field.get();
  int k = F->degree();
  int want = k - 1;
  UnitSystem sys;
  std::vector<std::vector<RatInterval>> chosen_rows;
  std::set<std::string> seen;
  Rat width = make_rat(1, 1L << 48);

  // height-first, then lexicographic scan of coordinate vectors
  std::vector<long> coords(k, 0);
  std::function<void(int, long, bool)> scan = [&](int pos, long height, bool at_height) {
    if ((int)sys.units.size() == want) return;
    if (pos == k) {
      if (!at_height) return;  // exactly this height, lower ones already done
      RatPoly rep;
      {
        std::vector<Rat> cs(k);
        for (int i = 0; i < k; ++i) cs[i] = Rat(coords[i]);
        rep = RatPoly(std::move(cs));
      }
      if (rep.degree() < 1) return;  // rational constants are torsion or non-units
      NFElem u(F, rep);
      Rat norm = field_norm(u);
      if (norm != 1 && norm != -1) return;
      // sign canonicalization: positive at the largest embedding
      RatInterval top = u.embed(F->real_root_count() - 1, width);
      Rat w = width;
      while (top.contains_zero()) {
        w /= 256;
        top = u.embed(F->real_root_count() - 1, w);
      }
      if (top.strictly_negative()) u = -u;
      if (!seen.insert(key_of(u)).second) return;
      auto row = log_embedding_row(u, width);
      row.pop_back();  // drop the last embedding; row sums vanish
      if (provably_dependent(u, sys.units, 6)) return;
      if (!rank_increases(chosen_rows, row)) return;
      sys.units.push_back(u);
      chosen_rows.push_back(row);
      return;
    }
    for (long v = -height; v <= height; ++v) {
      coords[pos] = v;
      scan(pos + 1, height, at_height || std::abs(v) == height);
      if ((int)sys.units.size() == want) return;
    }
  };
  for (long h = 1; h <= height_bound && (int)sys.units.size() < want; ++h)
    scan(0, h, false);
  if ((int)sys.units.size() < want)
    throw PreconditionError(
        "unit_search: not enough independent units; raise height_bound");

  // certified regulator-style minor of the final system
  std::vector<std::vector<RatInterval>> minor;
  for (const auto& r : chosen_rows) {
    std::vector<RatInterval> row(r.begin(), r.begin() + want);
    minor.push_back(row);
  }
  sys.regulator_minor = interval_det(minor);
  if (sys.regulator_minor.contains_zero())
    throw CertificationError("unit_search: regulator minor not certified nonzero");
  for (const auto& u : sys.units) sys.matrices.push_back(regular_representation(u));
  return sys;
}

RatMat regular_representation(const NFElem& u) {
  if (!u.field) throw PreconditionError("regular representation needs a field element");
  Rat norm = field_norm(u);
  if (norm != 1 && norm != -1)
    throw PreconditionError("regular_representation: element is not a unit");
  NFElem v = norm == -1 ? u * u : u;  // land in SL
  RatMat m = multiplication_matrix(v);
  for (const auto& e : m.a)
    if (e.get_den() != 1)
      throw CertificationError("regular representation is not integral");
  if (det_field(m) != 1)
    throw CertificationError("regular representation does not have det +1");
  return m;
}

MatrixGroup build_positive_entropy_group(const TotallyRealField& f, long height_bound) {
  UnitSystem sys = unit_search(f, height_bound);
  int k = f.degree();
  TorusModel model(k);
  std::vector<TorusAut> gens;
  std::vector<std::string> labels;
  for (size_t i = 0; i < sys.matrices.size(); ++i) {
    gens.push_back(TorusAut(model, rat_to_gauss(sys.matrices[i])));
    labels.push_back("u" + std::to_string(i + 1));
  }
  MatrixGroup g(model, std::move(gens), std::move(labels));
  if (!g.commuting())
    throw CertificationError("unit group generators failed to commute");
  EntropyAudit audit = check_words_positive_entropy(g, 3);
  if (!audit.all_positive)
    throw CertificationError("unit group has a zero-entropy nonidentity word");
  return g;
}

}  // namespace cohomdyn
