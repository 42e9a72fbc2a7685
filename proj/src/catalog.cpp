#include "fusekit/catalog.hpp"

#include <algorithm>
#include <array>
#include <cstring>

#include "fusekit/error.hpp"
#include "fusekit/io.hpp"

namespace fusekit {

namespace {

int64_t binomial(int n, int k) {
  int64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - i + 1) / i;
  return r;
}

// The tail group T = <s_2,...,s_{r-1}> of a Blackburn presentation is abelian
// with power relations s_i^p s_{i+1}^C(p,2) ... s_{i+p-1} = 1.  Elements are
// exponent vectors with entries in [0,p); reduction pushes overflow upward.
struct BlackburnCollector {
  int p, r;
  int alpha, beta, gamma, delta;
  int tdim;                       // r-2 tail generators s_2..s_{r-1}
  std::vector<int64_t> binom;     // C(p,k) for k=0..p
  std::vector<int> s1p_word;      // tail word for s1^p
  std::vector<int> sp_word;       // tail word for s^p
  std::vector<int> c21, c31;      // tail words for [s2,s1], [s3,s1]
  std::vector<std::vector<int>> conj_s1_powers;  // t*(k) tables, k=0..p-1

  int tidx(int letter) const { return letter - 2; }  // tail index of s_letter

  void reduce(std::vector<int>& f) const {
    for (int i = 0; i < tdim; ++i) {
      while (f[i] >= p) {
        f[i] -= p;
        for (int k = 1; k <= p - 1; ++k) {
          int j = i + k;
          if (j < tdim) f[j] -= static_cast<int>(binom[k + 1]);
        }
      }
      while (f[i] < 0) {
        f[i] += p;
        for (int k = 1; k <= p - 1; ++k) {
          int j = i + k;
          if (j < tdim) f[j] += static_cast<int>(binom[k + 1]);
        }
      }
    }
  }

  std::vector<int> add(const std::vector<int>& a, const std::vector<int>& b) const {
    std::vector<int> c(tdim);
    for (int i = 0; i < tdim; ++i) c[i] = a[i] + b[i];
    reduce(c);
    return c;
  }

  // conjugation by s: s_j -> s_j s_{j+1}
  std::vector<int> conj_s(const std::vector<int>& f) const {
    std::vector<int> g(tdim, 0);
    for (int i = 0; i < tdim; ++i) {
      g[i] += f[i];
      if (i + 1 < tdim) g[i + 1] += f[i];
    }
    reduce(g);
    return g;
  }

  // conjugation by s1: s_2 -> s_2 [s2,s1], s_3 -> s_3 [s3,s1], higher fixed
  std::vector<int> conj_s1(const std::vector<int>& f) const {
    std::vector<int> acc = f;
    if (f[0] != 0)
      for (int i = 0; i < tdim; ++i) acc[i] += f[0] * c21[i];
    if (tdim > 1 && f[1] != 0)
      for (int i = 0; i < tdim; ++i) acc[i] += f[1] * c31[i];
    reduce(acc);
    return acc;
  }

  struct Elt {
    int e0, e1;
    std::vector<int> t;
    bool operator==(const Elt& o) const { return e0 == o.e0 && e1 == o.e1 && t == o.t; }
  };

  Elt identity() const { return {0, 0, std::vector<int>(tdim, 0)}; }

  Elt mul_s1(const Elt& x) const {
    Elt y;
    y.e0 = x.e0;
    y.e1 = x.e1 + 1;
    y.t = conj_s1(x.t);
    if (y.e1 == p) {
      y.e1 = 0;
      y.t = add(y.t, s1p_word);
    }
    return y;
  }

  Elt mul_s(const Elt& x) const {
    Elt y;
    y.e0 = x.e0 + 1;
    y.e1 = x.e1;
    y.t = add(conj_s1_powers[x.e1], conj_s(x.t));
    if (y.e0 == p) {
      y.e0 = 0;
      std::vector<int> ts = sp_word;
      for (int k = 0; k < y.e1; ++k) ts = conj_s1(ts);
      y.t = add(y.t, ts);
    }
    return y;
  }

  int index_of(const Elt& x) const {
    int idx = x.e0 * p + x.e1;
    for (int i = 0; i < tdim; ++i) idx = idx * p + x.t[i];
    return idx;
  }
};

}  // namespace

GroupPtr blackburn_group(const BlackburnParams& params) {
  int p = params.p, r = params.r;
  if (p < 3 || p % 2 == 0) fail(ErrorCode::BadArgument, "blackburn_group needs an odd prime");
  if (r < 4) fail(ErrorCode::BadArgument, "blackburn_group needs r >= 4");
  auto in_range = [&](int v) { return v >= 0 && v < p; };
  if (!in_range(params.alpha) || !in_range(params.beta) || !in_range(params.gamma) ||
      !in_range(params.delta))
    fail(ErrorCode::BadArgument, "blackburn parameters must be residues mod p");

  int64_t order = 1;
  for (int i = 0; i < r; ++i) {
    order *= p;
    if (order > (1 << 20)) fail(ErrorCode::EnumerationCapExceeded, "blackburn group too large");
  }

  BlackburnCollector col;
  col.p = p;
  col.r = r;
  col.alpha = params.alpha;
  col.beta = params.beta;
  col.gamma = params.gamma;
  col.delta = params.delta;
  col.tdim = r - 2;
  col.binom.resize(p + 1);
  for (int k = 0; k <= p; ++k) col.binom[k] = binomial(p, k);

  auto tail_word = [&](std::initializer_list<std::pair<int, int>> letters) {
    std::vector<int> w(col.tdim, 0);
    for (auto [letter, exp] : letters) {
      if (letter <= r - 1) w[col.tidx(letter)] += exp;
    }
    col.reduce(w);
    return w;
  };

  // s^p = s_{r-1}^delta ; s1^p = s_{r-1}^gamma * (s_2^C(p,2) ... s_p)^-1
  col.sp_word = tail_word({{r - 1, params.delta}});
  {
    std::vector<int> w(col.tdim, 0);
    w[col.tidx(r - 1)] += params.gamma;
    for (int k = 2; k <= p; ++k) {
      int letter = k;
      if (letter <= r - 1) w[col.tidx(letter)] -= static_cast<int>(col.binom[k]);
    }
    col.reduce(w);
    col.s1p_word = w;
  }
  // [s2,s1] = (s_{r-2}^alpha s_{r-1}^beta)^-1 ; [s3,s1] = s_{r-1}^-alpha
  col.c21 = tail_word({{r - 2, -params.alpha}, {r - 1, -params.beta}});
  col.c31 = tail_word({{r - 1, -params.alpha}});

  // t*(k) = sum_{j<k} tau^j([s1,s]-word), the correction for (s1^k)ated by s
  col.conj_s1_powers.assign(p, std::vector<int>(col.tdim, 0));
  {
    std::vector<int> s2vec(col.tdim, 0);
    s2vec[0] = 1;  // [s1,s] = s2
    std::vector<int> acc(col.tdim, 0);
    std::vector<int> term = s2vec;
    for (int k = 1; k < p; ++k) {
      acc = col.add(acc, term);
      col.conj_s1_powers[k] = acc;
      term = col.conj_s1(term);
    }
  }

  // regular action on all exponent tuples
  int n = static_cast<int>(order);
  std::vector<BlackburnCollector::Elt> elts(n);
  {
    BlackburnCollector::Elt cur = col.identity();
    for (int idx = 0; idx < n; ++idx) {
      // decode idx as mixed-radix (e0, e1, t...)
      int rem = idx;
      std::vector<int> digits(r);
      for (int i = r - 1; i >= 0; --i) {
        digits[i] = rem % p;
        rem /= p;
      }
      cur.e0 = digits[0];
      cur.e1 = digits[1];
      cur.t.assign(digits.begin() + 2, digits.end());
      elts[idx] = cur;
    }
  }
  auto perm_of = [&](auto&& mul) {
    std::vector<uint16_t> img(n);
    for (int idx = 0; idx < n; ++idx) img[idx] = static_cast<uint16_t>(col.index_of(mul(elts[idx])));
    return Perm(std::move(img));
  };
  Perm gs = perm_of([&](const BlackburnCollector::Elt& x) { return col.mul_s(x); });
  Perm gs1 = perm_of([&](const BlackburnCollector::Elt& x) { return col.mul_s1(x); });

  GroupPtr g;
  try {
    g = Group::from_generators(n, {gs, gs1});
  } catch (const Error&) {
    fail(ErrorCode::InconsistentPresentation, "blackburn collection produced a non-group");
  }
  if (g->order() != order)
    fail(ErrorCode::InconsistentPresentation,
         "blackburn closure has order " + std::to_string(g->order()) + ", expected " +
             std::to_string(order));
  if (nilpotency_class(g) != r - 1)
    fail(ErrorCode::InconsistentPresentation, "blackburn group has wrong nilpotency class");
  return g;
}

int nilpotency_class(const GroupPtr& g) {
  Sub whole = whole_group(g);
  Sub cur = whole;
  int cls = 0;
  while (cur.order() > 1) {
    // [cur, G]
    const Group& gr = *g;
    std::vector<EltId> comms;
    std::vector<char> seen(gr.order(), 0);
    for (EltId a : cur.elems)
      for (EltId b : whole.gens) {
        EltId c = gr.mul(gr.mul(gr.inv(a), gr.inv(b)), gr.mul(a, b));
        if (!seen[c]) {
          seen[c] = 1;
          comms.push_back(c);
        }
      }
    Sub next;
    next.parent = g;
    next.elems = *closure_ids(gr, comms, 0);
    next.gens = small_generating_set(gr, next.elems);
    // normal closure is automatic here: [cur,G] is normal when cur is
    if (next.order() == cur.order()) return -1;  // not nilpotent
    cur = std::move(next);
    ++cls;
    if (cls > 64) return -1;
  }
  return cls;
}

GroupPtr extraspecial_group(int p, char sign) {
  if (p == 2) {
    if (sign == '+') {
      // dihedral of order 8 on 4 points
      return Group::from_generators(4, {Perm({1, 2, 3, 0}), Perm({3, 2, 1, 0})});
    }
    // quaternion of order 8 via its regular action
    // elements 1,-1,i,-i,j,-j,k,-k as indices 0..7
    // i: 1->i->-1->-i->1, j->-k, -j->k, k->j, -k->-j
    std::vector<uint16_t> mi = {2, 3, 1, 0, 7, 6, 4, 5};
    std::vector<uint16_t> mj = {4, 5, 6, 7, 1, 0, 3, 2};
    return Group::from_generators(8, {Perm(std::move(mi)), Perm(std::move(mj))});
  }
  if (sign != '+') fail(ErrorCode::UnknownTag, "only exponent-p extraspecial groups are bundled for odd p");
  // Heisenberg group mod p on p^3 points (regular action)
  int n = p * p * p;
  auto idx = [&](int a, int b, int c) { return (a * p + b) * p + c; };
  std::vector<uint16_t> x(n), y(n);
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        // (a,b,c) * (1,0,0) = (a+1, b, c)
        x[idx(a, b, c)] = static_cast<uint16_t>(idx((a + 1) % p, b, c));
        // (a,b,c) * (0,1,0) = (a, b+1, c + a)
        y[idx(a, b, c)] = static_cast<uint16_t>(idx(a, (b + 1) % p, (c + a) % p));
      }
  return Group::from_generators(n, {Perm(std::move(x)), Perm(std::move(y))});
}

GroupPtr wreath_cyclic(int p) {
  int n = p * p;
  std::vector<uint16_t> base(n), top(n);
  for (int i = 0; i < n; ++i) {
    base[i] = static_cast<uint16_t>(i < p ? (i + 1) % p : i);
    top[i] = static_cast<uint16_t>((i + p) % n);
  }
  return Group::from_generators(n, {Perm(std::move(base)), Perm(std::move(top))});
}

GroupPtr symmetric_group(int n) {
  if (n < 1) fail(ErrorCode::BadArgument, "degree must be positive");
  if (n == 1) return Group::from_generators(1, {});
  std::vector<uint16_t> cycle(n), swap01(n);
  for (int i = 0; i < n; ++i) {
    cycle[i] = static_cast<uint16_t>((i + 1) % n);
    swap01[i] = static_cast<uint16_t>(i);
  }
  std::swap(swap01[0], swap01[1]);
  return Group::from_generators(n, {Perm(std::move(cycle)), Perm(std::move(swap01))});
}

GroupPtr alternating_group(int n) {
  if (n < 3) return Group::from_generators(std::max(1, n), {});
  std::vector<uint16_t> three(n), rest(n);
  for (int i = 0; i < n; ++i) {
    three[i] = static_cast<uint16_t>(i);
    rest[i] = static_cast<uint16_t>(i);
  }
  three[0] = 1;
  three[1] = 2;
  three[2] = 0;
  if (n % 2 == 1) {
    for (int i = 0; i < n; ++i) rest[i] = static_cast<uint16_t>((i + 1) % n);
  } else {
    // (2 3 ... n) fixing point 1
    for (int i = 1; i < n; ++i) rest[i] = static_cast<uint16_t>(i == n - 1 ? 1 : i + 1);
  }
  return Group::from_generators(n, {Perm(std::move(three)), Perm(std::move(rest))});
}

GroupPtr sylow_of_symmetric(int n, int p) {
  GroupPtr sym = symmetric_group(n);
  Sub syl = sylow_subgroup(sym, p);
  std::vector<Perm> gens;
  for (EltId x : syl.gens) gens.push_back(sym->elem(x));
  return Group::from_generators(n, gens);
}

GroupPtr sylow_of_alternating(int n, int p) {
  GroupPtr alt = alternating_group(n);
  Sub syl = sylow_subgroup(alt, p);
  std::vector<Perm> gens;
  for (EltId x : syl.gens) gens.push_back(alt->elem(x));
  return Group::from_generators(n, gens);
}

GroupPtr cyclic_group(int n) {
  std::vector<uint16_t> img(n);
  for (int i = 0; i < n; ++i) img[i] = static_cast<uint16_t>((i + 1) % n);
  return Group::from_generators(n, {Perm(std::move(img))});
}

GroupPtr elementary_abelian(int p, int rank) {
  int n = 1;
  for (int i = 0; i < rank; ++i) n *= p;
  std::vector<Perm> gens;
  for (int k = 0; k < rank; ++k) {
    int stride = 1;
    for (int i = 0; i < k; ++i) stride *= p;
    std::vector<uint16_t> img(n);
    for (int i = 0; i < n; ++i) {
      int digit = (i / stride) % p;
      img[i] = static_cast<uint16_t>(i + ((digit + 1) % p - digit) * stride);
    }
    gens.emplace_back(std::move(img));
  }
  return Group::from_generators(n, gens);
}

namespace {

// PSp4(3) (= PSU4(2)) as the projective action of Sp4(3) on the 40 points of
// PG(3,3), generated by symplectic transvections.
GroupPtr psu4_2() {
  const int p = 3;
  using Vec = std::array<int, 4>;
  auto form = [&](const Vec& x, const Vec& y) {
    int v = x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2];
    return ((v % p) + p) % p;
  };
  // enumerate projective points: vectors with first nonzero coordinate 1
  std::vector<Vec> points;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c)
        for (int d = 0; d < p; ++d) {
          Vec v = {a, b, c, d};
          int lead = -1;
          for (int i = 0; i < 4; ++i)
            if (v[i] != 0) {
              lead = i;
              break;
            }
          if (lead < 0) continue;
          if (v[lead] != 1) continue;
          points.push_back(v);
        }
  auto point_index = [&](Vec v) {
    int lead = -1;
    for (int i = 0; i < 4; ++i)
      if (v[i] != 0) {
        lead = i;
        break;
      }
    // normalize leading coefficient to 1
    int inv = v[lead] == 1 ? 1 : 2;  // inverse mod 3
    for (int i = 0; i < 4; ++i) v[i] = (v[i] * inv) % p;
    for (size_t j = 0; j < points.size(); ++j)
      if (points[j] == v) return static_cast<int>(j);
    fail(ErrorCode::BadArgument, "projective point lookup failed");
  };
  auto transvection_perm = [&](const Vec& t) {
    std::vector<uint16_t> img(points.size());
    for (size_t j = 0; j < points.size(); ++j) {
      Vec x = points[j];
      int lam = form(x, t);
      Vec y;
      for (int i = 0; i < 4; ++i) y[i] = (x[i] + lam * t[i]) % p;
      img[j] = static_cast<uint16_t>(point_index(y));
    }
    return Perm(std::move(img));
  };
  std::vector<Perm> gens;
  for (Vec t : {Vec{1, 0, 0, 0}, Vec{0, 1, 0, 0}, Vec{0, 0, 1, 0}, Vec{0, 0, 0, 1},
                Vec{1, 0, 1, 0}, Vec{0, 1, 0, 1}})
    gens.push_back(transvection_perm(t));
  GroupPtr g = Group::from_generators(static_cast<int>(points.size()), gens);
  if (g->order() != 25920) fail(ErrorCode::BadArgument, "psu4_2 construction has wrong order");
  return g;
}

// PSL3(3) = SL3(3) acting on the 13 points of PG(2,3).
GroupPtr psl3_3() {
  const int p = 3;
  using Vec = std::array<int, 3>;
  std::vector<Vec> points;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) {
        Vec v = {a, b, c};
        int lead = -1;
        for (int i = 0; i < 3; ++i)
          if (v[i] != 0) {
            lead = i;
            break;
          }
        if (lead < 0 || v[lead] != 1) continue;
        points.push_back(v);
      }
  auto point_index = [&](Vec v) {
    int lead = -1;
    for (int i = 0; i < 3; ++i)
      if (v[i] != 0) {
        lead = i;
        break;
      }
    int inv = v[lead] == 1 ? 1 : 2;
    for (int i = 0; i < 3; ++i) v[i] = (v[i] * inv) % p;
    for (size_t j = 0; j < points.size(); ++j)
      if (points[j] == v) return static_cast<int>(j);
    fail(ErrorCode::BadArgument, "projective point lookup failed");
  };
  auto matrix_perm = [&](const std::array<std::array<int, 3>, 3>& m) {
    std::vector<uint16_t> img(points.size());
    for (size_t j = 0; j < points.size(); ++j) {
      Vec y = {0, 0, 0};
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) y[r] = (y[r] + m[r][c] * points[j][c]) % p;
      img[j] = static_cast<uint16_t>(point_index(y));
    }
    return Perm(std::move(img));
  };
  std::array<std::array<int, 3>, 3> t = {{{1, 1, 0}, {0, 1, 0}, {0, 0, 1}}};
  std::array<std::array<int, 3>, 3> c = {{{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}};
  GroupPtr g = Group::from_generators(13, {matrix_perm(t), matrix_perm(c)});
  if (g->order() != 5616) fail(ErrorCode::BadArgument, "psl3_3 construction has wrong order");
  return g;
}

GroupPtr sylow_normalizer(int n, int p) {
  GroupPtr sym = symmetric_group(n);
  Sub syl = sylow_subgroup(sym, p);
  Sub norm = normalizer(syl);
  std::vector<Perm> gens;
  for (EltId x : norm.gens) gens.push_back(sym->elem(x));
  return Group::from_generators(n, gens);
}

}  // namespace

GroupPtr named_group(const std::string& tag) {
  if (tag == "psu4_2") return psu4_2();
  if (tag == "psl3_3") return psl3_3();
  if (tag == "alt8") return alternating_group(8);
  if (tag == "sym4") return symmetric_group(4);
  if (tag == "alt5") return alternating_group(5);
  if (tag == "alt6") return alternating_group(6);
  fail(ErrorCode::UnknownTag, "unknown group tag: " + tag);
}

namespace {

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  size_t pos = 0;
  while (pos < s.size()) {
    size_t comma = s.find(',', pos);
    if (comma == std::string::npos) comma = s.size();
    out.push_back(std::atoi(s.substr(pos, comma - pos).c_str()));
    pos = comma + 1;
  }
  return out;
}

}  // namespace

GroupPtr group_from_catalog(const std::string& name) {
  size_t colon = name.find(':');
  std::string head = colon == std::string::npos ? name : name.substr(0, colon);
  std::string rest = colon == std::string::npos ? "" : name.substr(colon + 1);
  if (head == "blackburn") {
    auto v = parse_ints(rest);
    if (v.size() != 6) fail(ErrorCode::UnknownTag, "blackburn:p,r,a,b,c,d expected");
    BlackburnParams bp;
    bp.p = v[0];
    bp.r = v[1];
    bp.alpha = v[2];
    bp.beta = v[3];
    bp.gamma = v[4];
    bp.delta = v[5];
    return blackburn_group(bp);
  }
  if (head == "extraspecial") {
    if (rest.empty()) fail(ErrorCode::UnknownTag, "extraspecial:p+ or p- expected");
    char sign = rest.back() == '-' ? '-' : '+';
    int p = std::atoi(rest.substr(0, rest.size() - (rest.back() == '+' || rest.back() == '-' ? 1 : 0)).c_str());
    return extraspecial_group(p, sign);
  }
  if (head == "wreath") return wreath_cyclic(std::atoi(rest.c_str()));
  if (head == "syl") {
    size_t comma = rest.find(',');
    if (comma == std::string::npos) fail(ErrorCode::UnknownTag, "syl:p,<name> expected");
    int p = std::atoi(rest.substr(0, comma).c_str());
    GroupPtr g = group_from_catalog(rest.substr(comma + 1));
    Sub syl = sylow_subgroup(g, p);
    std::vector<Perm> gens;
    for (EltId x : syl.gens) gens.push_back(g->elem(x));
    return Group::from_generators(g->degree(), gens);
  }
  if (head == "sylA") {
    auto v = parse_ints(rest);
    if (v.size() != 2) fail(ErrorCode::UnknownTag, "sylA:n,p expected");
    return sylow_of_alternating(v[0], v[1]);
  }
  if (head == "sylS") {
    auto v = parse_ints(rest);
    if (v.size() != 2) fail(ErrorCode::UnknownTag, "sylS:n,p expected");
    return sylow_of_symmetric(v[0], v[1]);
  }
  if (head == "sylnorm") {
    auto v = parse_ints(rest);
    if (v.size() != 2) fail(ErrorCode::UnknownTag, "sylnorm:n,p expected");
    return sylow_normalizer(v[0], v[1]);
  }
  if (head == "alt") return alternating_group(std::atoi(rest.c_str()));
  if (head == "sym") return symmetric_group(std::atoi(rest.c_str()));
  if (head == "cyclic") return cyclic_group(std::atoi(rest.c_str()));
  if (head == "elemab") {
    auto v = parse_ints(rest);
    if (v.size() != 2) fail(ErrorCode::UnknownTag, "elemab:p,rank expected");
    return elementary_abelian(v[0], v[1]);
  }
  if (head == "file") return parse_group_file(rest);
  return named_group(name);
}

std::vector<std::string> catalog_names() {
  return {"blackburn:p,r,a,b,c,d", "extraspecial:p+", "extraspecial:2-", "wreath:p",
          "sylA:n,p",              "sylS:n,p",        "syl:p,<name>",    "sylnorm:n,p",
          "alt:n",                 "sym:n",           "cyclic:n",        "elemab:p,rank",
          "psl3_3",                "psu4_2",          "alt8",            "sym4",
          "alt5",                  "alt6",            "file:<path>"};
}

}  // namespace fusekit
