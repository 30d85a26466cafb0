#include "mvfp/scalar.hpp"

#include <gmp.h>
#include <mpfr.h>

#include <atomic>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <deque>
#include <limits>
#include <memory>
#include <mutex>
#include <unordered_map>
#include <vector>

#include "mvfp/config.hpp"
#include "mvfp/errors.hpp"

namespace mvfp {

namespace {

std::atomic<double> g_float_tolerance{1e-12};
std::atomic<int> g_max_level{4};

// Reduced-fraction results of arithmetic on two stored fractions are folded
// eagerly up to this size; larger results stay as lazy nodes.
constexpr std::size_t kFoldBits = 1u << 16;
// Budget for materializing a lazy value during an exact comparison.
constexpr std::size_t kCompareBits = 1u << 22;

constexpr mpfr_prec_t kPrecLadder[] = {128, 512, 2048, 8192, 32768};

}  // namespace

double Config::float_tolerance() { return g_float_tolerance.load(); }
void Config::set_float_tolerance(double tol) {
  if (!(tol >= 0.0) || !std::isfinite(tol))
    fail(ErrorCode::InvalidArgument, "float tolerance must be finite and >= 0");
  g_float_tolerance.store(tol);
}
int Config::max_hyperspace_level() { return g_max_level.load(); }
void Config::set_max_hyperspace_level(int level) {
  if (level < 1) fail(ErrorCode::InvalidArgument, "max hyperspace level must be >= 1");
  g_max_level.store(level);
}

namespace detail {

// ---------------------------------------------------------------------------
// RAII wrapper for mpq_t.

struct Rat {
  mpq_t q;

  Rat() { mpq_init(q); }
  Rat(const Rat& o) {
    mpq_init(q);
    mpq_set(q, o.q);
  }
  Rat(Rat&& o) noexcept {
    mpq_init(q);
    mpq_swap(q, o.q);
  }
  Rat& operator=(Rat o) {
    mpq_swap(q, o.q);
    return *this;
  }
  ~Rat() { mpq_clear(q); }

  static Rat of(long long num, long long den) {
    if (den == 0) fail(ErrorCode::DivisionByZero, "rational with zero denominator");
    Rat r;
    mpz_set_si(mpq_numref(r.q), static_cast<long>(num));
    mpz_set_si(mpq_denref(r.q), static_cast<long>(den));
    if (den < 0) {
      mpz_neg(mpq_numref(r.q), mpq_numref(r.q));
      mpz_neg(mpq_denref(r.q), mpq_denref(r.q));
    }
    mpq_canonicalize(r.q);
    return r;
  }

  std::size_t bits() const {
    return mpz_sizeinbase(mpq_numref(q), 2) + mpz_sizeinbase(mpq_denref(q), 2);
  }
  int sign() const { return mpq_sgn(q); }
  bool equals(const Rat& o) const { return mpq_equal(q, o.q) != 0; }
  int cmp(const Rat& o) const { return mpq_cmp(q, o.q); }

  std::string str() const {
    char* s = mpq_get_str(nullptr, 10, q);
    std::string out(s);
    void (*freefn)(void*, std::size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefn);
    freefn(s, std::strlen(s) + 1);
    return out;
  }

  std::size_t hash() const {
    auto hash_z = [](mpz_srcptr z) {
      std::size_t h = static_cast<std::size_t>(mpz_sgn(z)) + 0x9e3779b97f4a7c15ull;
      const mp_limb_t* limbs = mpz_limbs_read(z);
      std::size_t n = mpz_size(z);
      for (std::size_t i = 0; i < n; ++i)
        h = h * 1099511628211ull ^ static_cast<std::size_t>(limbs[i]);
      return h;
    };
    return hash_z(mpq_numref(q)) * 31 + hash_z(mpq_denref(q));
  }
};

// ---------------------------------------------------------------------------
// Certified double enclosures (outward-inflated interval arithmetic).

struct Interval {
  double lo, hi;
};

namespace iv {

inline double down(double x) {
  if (std::isnan(x)) return -std::numeric_limits<double>::infinity();
  return std::nextafter(std::nextafter(x, -std::numeric_limits<double>::infinity()),
                        -std::numeric_limits<double>::infinity());
}
inline double up(double x) {
  if (std::isnan(x)) return std::numeric_limits<double>::infinity();
  return std::nextafter(std::nextafter(x, std::numeric_limits<double>::infinity()),
                        std::numeric_limits<double>::infinity());
}

inline Interval wide() {
  return {-std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity()};
}

inline Interval add(Interval a, Interval b) { return {down(a.lo + b.lo), up(a.hi + b.hi)}; }
inline Interval sub(Interval a, Interval b) { return {down(a.lo - b.hi), up(a.hi - b.lo)}; }

inline Interval mul(Interval a, Interval b) {
  double c[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  Interval r{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
  for (double p : c) {
    r.lo = std::min(r.lo, down(p));
    r.hi = std::max(r.hi, up(p));
  }
  if (std::isnan(r.lo) || std::isnan(r.hi)) return wide();
  return r;
}

inline Interval div(Interval a, Interval b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) return wide();
  double c[4] = {a.lo / b.lo, a.lo / b.hi, a.hi / b.lo, a.hi / b.hi};
  Interval r{std::numeric_limits<double>::infinity(),
             -std::numeric_limits<double>::infinity()};
  for (double p : c) {
    r.lo = std::min(r.lo, down(p));
    r.hi = std::max(r.hi, up(p));
  }
  if (std::isnan(r.lo) || std::isnan(r.hi)) return wide();
  return r;
}

inline Interval sqrt(Interval a) {
  double lo = a.lo <= 0.0 ? 0.0 : down(std::sqrt(a.lo));
  double hi = up(std::sqrt(std::max(a.hi, 0.0)));
  if (lo < 0.0) lo = 0.0;
  return {lo, hi};
}

inline Interval from_rat(const Rat& r) {
  // mpfr_get_d honours directed rounding across under- and overflow.
  mpfr_t t;
  mpfr_init2(t, 64);
  mpfr_set_q(t, r.q, MPFR_RNDD);
  double lo = mpfr_get_d(t, MPFR_RNDD);
  mpfr_set_q(t, r.q, MPFR_RNDU);
  double hi = mpfr_get_d(t, MPFR_RNDU);
  mpfr_clear(t);
  return {lo, hi};
}

}  // namespace iv

// ---------------------------------------------------------------------------
// MPFR enclosures with directed rounding, refined on demand.

struct MpfrIv {
  mpfr_prec_t prec = 0;
  mpfr_t lo, hi;
  bool inited = false;

  void ensure(mpfr_prec_t p) {
    if (inited && prec == p) return;
    if (inited) {
      mpfr_clear(lo);
      mpfr_clear(hi);
    }
    mpfr_init2(lo, p);
    mpfr_init2(hi, p);
    prec = p;
    inited = true;
  }
  ~MpfrIv() {
    if (inited) {
      mpfr_clear(lo);
      mpfr_clear(hi);
    }
  }
  bool is_point() const { return inited && mpfr_equal_p(lo, hi) != 0; }
};

enum class Op : unsigned char { Leaf, Add, Sub, Mul, Div, Sqrt };

struct ExactNode {
  Op op;
  std::uint64_t id;
  const ExactNode* a = nullptr;
  const ExactNode* b = nullptr;
  Interval iv{};
  mutable std::unique_ptr<Rat> exact;    // leaves always; others memoized
  mutable std::unique_ptr<MpfrIv> ref;   // best refinement so far
};

// ---------------------------------------------------------------------------
// Engine: hash-consed node store plus the comparison ladder. A single
// recursive mutex guards all structural state; node values are immutable
// once published.

class Engine {
 public:
  static Engine& instance() {
    static Engine* e = new Engine();  // intentionally immortal
    return *e;
  }

  std::recursive_mutex mu;

  const ExactNode* zero_node = nullptr;
  const ExactNode* one_node = nullptr;

  const ExactNode* leaf(Rat r) {
    std::lock_guard lk(mu);
    std::size_t h = r.hash();
    auto it = leaf_intern_.find(h);
    if (it != leaf_intern_.end()) {
      for (const ExactNode* n : it->second)
        if (n->exact->equals(r)) return n;
    }
    ExactNode& n = arena_.emplace_back();
    n.op = Op::Leaf;
    n.id = next_id_++;
    n.exact = std::make_unique<Rat>(std::move(r));
    n.iv = iv::from_rat(*n.exact);
    leaf_intern_[h].push_back(&n);
    return &n;
  }

  const ExactNode* make(Op op, const ExactNode* a, const ExactNode* b) {
    std::lock_guard lk(mu);
    // Canonical order for commutative operations.
    if ((op == Op::Add || op == Op::Mul) && b->id < a->id) std::swap(a, b);

    switch (op) {
      case Op::Add:
        if (a == zero_node) return b;
        if (b == zero_node) return a;
        break;
      case Op::Sub:
        if (b == zero_node) return a;
        if (a == b) return zero_node;
        break;
      case Op::Mul:
        if (a == zero_node || b == zero_node) return zero_node;
        if (a == one_node) return b;
        if (b == one_node) return a;
        if (a == b && a->op == Op::Sqrt) return a->a;  // sqrt(x)*sqrt(x) = x
        if (a->op == Op::Sqrt && b->op == Op::Sqrt)    // radicands are nonnegative
          return make(Op::Sqrt, make(Op::Mul, a->a, b->a), nullptr);
        break;
      case Op::Div: {
        int s = sign(b);
        if (s == 0) fail(ErrorCode::DivisionByZero, "division by zero scalar");
        if (b == one_node) return a;
        if (a == zero_node) return zero_node;
        if (a == b) return one_node;
        if (a->op == Op::Mul) {
          if (a->b == b) return a->a;
          if (a->a == b) return a->b;
        }
        if (a->op == Op::Sqrt && b->op == Op::Sqrt)
          return make(Op::Sqrt, make(Op::Div, a->a, b->a), nullptr);
        break;
      }
      case Op::Sqrt: {
        int s = sign(a);
        if (s < 0) fail(ErrorCode::InvalidArgument, "square root of negative scalar");
        if (s == 0) return zero_node;
        if (a == one_node) return one_node;
        if (a->op == Op::Mul && a->a == a->b) return abs_of(a->a);
        break;
      }
      case Op::Leaf:
        break;
    }

    // Fold small fraction-on-fraction results.
    if (a->exact && (op == Op::Sqrt || b->exact)) {
      std::size_t predicted =
          op == Op::Sqrt ? a->exact->bits() / 2 + 2
                         : a->exact->bits() + b->exact->bits() + 2;
      if (predicted <= kFoldBits) {
        if (op == Op::Sqrt) {
          Rat r;
          if (exact_sqrt(*a->exact, r)) return leaf(std::move(r));
          // irrational radicand: keep the node
        } else {
          Rat r;
          switch (op) {
            case Op::Add: mpq_add(r.q, a->exact->q, b->exact->q); break;
            case Op::Sub: mpq_sub(r.q, a->exact->q, b->exact->q); break;
            case Op::Mul: mpq_mul(r.q, a->exact->q, b->exact->q); break;
            case Op::Div: mpq_div(r.q, a->exact->q, b->exact->q); break;
            default: break;
          }
          return leaf(std::move(r));
        }
      }
    }

    OpKey key{op, a, b};
    auto it = op_intern_.find(key);
    if (it != op_intern_.end()) return it->second;

    ExactNode& n = arena_.emplace_back();
    n.op = op;
    n.id = next_id_++;
    n.a = a;
    n.b = b;
    switch (op) {
      case Op::Add: n.iv = iv::add(a->iv, b->iv); break;
      case Op::Sub: n.iv = iv::sub(a->iv, b->iv); break;
      case Op::Mul: n.iv = iv::mul(a->iv, b->iv); break;
      case Op::Div: n.iv = iv::div(a->iv, b->iv); break;
      case Op::Sqrt: n.iv = iv::sqrt(a->iv); break;
      case Op::Leaf: break;
    }
    op_intern_.emplace(key, &n);
    return &n;
  }

  const ExactNode* abs_of(const ExactNode* x) {
    int s = sign(x);
    if (s >= 0) return x;
    return make(Op::Sub, zero_node, x);
  }

  int sign(const ExactNode* x) {
    auto o = compare(x, zero_node);
    if (o == std::strong_ordering::less) return -1;
    if (o == std::strong_ordering::greater) return 1;
    return 0;
  }

  std::strong_ordering compare(const ExactNode* x, const ExactNode* y) {
    std::lock_guard lk(mu);
    if (x == y) return std::strong_ordering::equal;
    if (x->iv.hi < y->iv.lo) return std::strong_ordering::less;
    if (y->iv.hi < x->iv.lo) return std::strong_ordering::greater;
    if (x->exact && y->exact) return order_of(x->exact->cmp(*y->exact));

    // Square roots compare through their radicands.
    if (x->op == Op::Sqrt || y->op == Op::Sqrt) {
      if (x->op == Op::Sqrt && y->op == Op::Sqrt) return compare(x->a, y->a);
      if (x->op == Op::Sqrt) {
        if (sign(y) < 0) return std::strong_ordering::greater;  // sqrt >= 0
        return compare(x->a, make(Op::Mul, y, y));
      }
      if (sign(x) < 0) return std::strong_ordering::less;
      return compare(make(Op::Mul, x, x), y->a);
    }

    for (mpfr_prec_t prec : kPrecLadder) {
      const MpfrIv& ix = refine(x, prec);
      const MpfrIv& iy = refine(y, prec);
      if (mpfr_less_p(ix.hi, iy.lo)) return std::strong_ordering::less;
      if (mpfr_less_p(iy.hi, ix.lo)) return std::strong_ordering::greater;
      if (ix.is_point() && iy.is_point() && mpfr_equal_p(ix.lo, iy.lo))
        return std::strong_ordering::equal;
    }

    const Rat* rx = materialize(x, kCompareBits);
    const Rat* ry = materialize(y, kCompareBits);
    if (rx && ry) return order_of(rx->cmp(*ry));
    fail(ErrorCode::PrecisionExhausted,
         "cannot decide comparison: values agree beyond every refinement "
         "level and are too large to materialize exactly");
  }

  const Rat* materialize(const ExactNode* n, std::size_t max_bits) {
    std::lock_guard lk(mu);
    if (n->exact) return n->exact.get();
    const Rat* ra = materialize(n->a, max_bits);
    if (!ra) return nullptr;
    const Rat* rb = nullptr;
    if (n->op != Op::Sqrt) {
      rb = materialize(n->b, max_bits);
      if (!rb) return nullptr;
      if (ra->bits() + rb->bits() + 2 > max_bits) return nullptr;
    }
    Rat r;
    switch (n->op) {
      case Op::Add: mpq_add(r.q, ra->q, rb->q); break;
      case Op::Sub: mpq_sub(r.q, ra->q, rb->q); break;
      case Op::Mul: mpq_mul(r.q, ra->q, rb->q); break;
      case Op::Div: mpq_div(r.q, ra->q, rb->q); break;
      case Op::Sqrt:
        if (!exact_sqrt(*ra, r)) return nullptr;  // irrational
        break;
      case Op::Leaf: break;
    }
    n->exact = std::make_unique<Rat>(std::move(r));
    return n->exact.get();
  }

  const MpfrIv& refine(const ExactNode* n, mpfr_prec_t prec) {
    if (n->ref && n->ref->prec >= prec) return *n->ref;
    if (!n->ref) n->ref = std::make_unique<MpfrIv>();
    if (n->exact) {
      n->ref->ensure(prec);
      mpfr_set_q(n->ref->lo, n->exact->q, MPFR_RNDD);
      mpfr_set_q(n->ref->hi, n->exact->q, MPFR_RNDU);
      return *n->ref;
    }
    const MpfrIv& ia = refine(n->a, prec);
    // Careful: refine(n->b) may invalidate nothing (unique_ptr stable).
    MpfrIv out;
    out.ensure(prec);
    switch (n->op) {
      case Op::Add: {
        const MpfrIv& ib = refine(n->b, prec);
        mpfr_add(out.lo, ia.lo, ib.lo, MPFR_RNDD);
        mpfr_add(out.hi, ia.hi, ib.hi, MPFR_RNDU);
        break;
      }
      case Op::Sub: {
        const MpfrIv& ib = refine(n->b, prec);
        mpfr_sub(out.lo, ia.lo, ib.hi, MPFR_RNDD);
        mpfr_sub(out.hi, ia.hi, ib.lo, MPFR_RNDU);
        break;
      }
      case Op::Mul: {
        const MpfrIv& ib = refine(n->b, prec);
        corner_op(out, ia, ib, /*divide=*/false);
        break;
      }
      case Op::Div: {
        const MpfrIv& ib = refine(n->b, prec);
        if (mpfr_sgn(ib.lo) <= 0 && mpfr_sgn(ib.hi) >= 0) {
          mpfr_set_inf(out.lo, -1);
          mpfr_set_inf(out.hi, 1);
        } else {
          corner_op(out, ia, ib, /*divide=*/true);
        }
        break;
      }
      case Op::Sqrt: {
        if (mpfr_sgn(ia.lo) < 0)
          mpfr_set_zero(out.lo, 1);
        else
          mpfr_sqrt(out.lo, ia.lo, MPFR_RNDD);
        mpfr_sqrt(out.hi, ia.hi, MPFR_RNDU);
        break;
      }
      case Op::Leaf: break;
    }
    n->ref->ensure(prec);
    mpfr_set(n->ref->lo, out.lo, MPFR_RNDD);
    mpfr_set(n->ref->hi, out.hi, MPFR_RNDU);
    return *n->ref;
  }

  std::string render(const ExactNode* n, std::size_t budget) {
    std::lock_guard lk(mu);
    if (const Rat* r = materialize(n, budget)) return r->str();
    const MpfrIv& i = refine(n, 128);
    MpfrIv mid;
    mid.ensure(128);
    mpfr_add(mid.lo, i.lo, i.hi, MPFR_RNDN);
    mpfr_div_ui(mid.lo, mid.lo, 2, MPFR_RNDN);
    char buf[64];
    mpfr_snprintf(buf, sizeof(buf), "%.18Rg", mid.lo);
    return std::string("~") + buf;
  }

  double approx(const ExactNode* n) {
    std::lock_guard lk(mu);
    if (n->exact) return mpq_get_d(n->exact->q);
    const MpfrIv& i = refine(n, 64);
    double lo = mpfr_get_d(i.lo, MPFR_RNDN);
    double hi = mpfr_get_d(i.hi, MPFR_RNDN);
    return (lo + hi) / 2;
  }

 private:
  Engine() {
    zero_node = leaf(Rat::of(0, 1));
    one_node = leaf(Rat::of(1, 1));
  }

  static std::strong_ordering order_of(int c) {
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  static bool exact_sqrt(const Rat& a, Rat& out) {
    if (mpq_sgn(a.q) < 0) fail(ErrorCode::InvalidArgument, "square root of negative scalar");
    if (mpz_perfect_square_p(mpq_numref(a.q)) && mpz_perfect_square_p(mpq_denref(a.q))) {
      mpz_sqrt(mpq_numref(out.q), mpq_numref(a.q));
      mpz_sqrt(mpq_denref(out.q), mpq_denref(a.q));
      mpq_canonicalize(out.q);
      return true;
    }
    return false;
  }

  // min/max over the four interval corners with directed rounding.
  static void corner_op(MpfrIv& out, const MpfrIv& a, const MpfrIv& b, bool divide) {
    mpfr_t c;
    mpfr_init2(c, out.prec);
    auto apply = [&](mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
      if (divide)
        mpfr_div(c, x, y, rnd);
      else
        mpfr_mul(c, x, y, rnd);
    };
    bool first = true;
    mpfr_srcptr xs[2] = {a.lo, a.hi};
    mpfr_srcptr ys[2] = {b.lo, b.hi};
    for (auto x : xs)
      for (auto y : ys) {
        apply(x, y, MPFR_RNDD);
        if (first || mpfr_less_p(c, out.lo)) mpfr_set(out.lo, c, MPFR_RNDD);
        apply(x, y, MPFR_RNDU);
        if (first || mpfr_greater_p(c, out.hi)) mpfr_set(out.hi, c, MPFR_RNDU);
        first = false;
      }
    mpfr_clear(c);
  }

  struct OpKey {
    Op op;
    const ExactNode* a;
    const ExactNode* b;
    bool operator==(const OpKey& o) const { return op == o.op && a == o.a && b == o.b; }
  };
  struct OpKeyHash {
    std::size_t operator()(const OpKey& k) const {
      std::size_t h = std::hash<const void*>()(k.a);
      h = h * 31 + std::hash<const void*>()(k.b);
      return h * 31 + static_cast<std::size_t>(k.op);
    }
  };

  std::deque<ExactNode> arena_;
  std::unordered_map<std::size_t, std::vector<const ExactNode*>> leaf_intern_;
  std::unordered_map<OpKey, const ExactNode*, OpKeyHash> op_intern_;
  std::uint64_t next_id_ = 0;
};

struct ScalarAccess {
  static Scalar wrap(const ExactNode* n) {
    Scalar s;
    s.mode_ = NumericMode::Rational;
    s.node_ = n;
    s.value_ = 0;
    return s;
  }
  static const ExactNode* node(const Scalar& s) { return s.node_; }
};

namespace {

Rat parse_rational_text(std::string_view text) {
  auto trim = [](std::string_view v) {
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.front()))) v.remove_prefix(1);
    while (!v.empty() && std::isspace(static_cast<unsigned char>(v.back()))) v.remove_suffix(1);
    return v;
  };
  std::string_view v = trim(text);
  if (v.empty()) fail(ErrorCode::ParseError, "empty scalar literal");

  std::string s(v);
  if (s.find('/') != std::string::npos) {
    Rat r;
    if (mpq_set_str(r.q, s.c_str(), 10) != 0)
      fail(ErrorCode::ParseError, "bad rational literal '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q)) == 0)
      fail(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
    if (mpz_sgn(mpq_denref(r.q)) < 0) {
      mpz_neg(mpq_numref(r.q), mpq_numref(r.q));
      mpz_neg(mpq_denref(r.q), mpq_denref(r.q));
    }
    mpq_canonicalize(r.q);
    return r;
  }

  // Decimal / scientific literal, converted exactly.
  bool neg = false;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    neg = s[i] == '-';
    ++i;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_dot = false, seen_digit = false;
  long exp10 = 0;
  for (; i < s.size(); ++i) {
    char c = s[i];
    if (c >= '0' && c <= '9') {
      digits.push_back(c);
      seen_digit = true;
      if (seen_dot) ++frac_digits;
    } else if (c == '.' && !seen_dot) {
      seen_dot = true;
    } else if ((c == 'e' || c == 'E') && seen_digit) {
      auto rest = s.substr(i + 1);
      if (rest.empty()) fail(ErrorCode::ParseError, "bad exponent in '" + s + "'");
      std::size_t pos = 0;
      try {
        exp10 = std::stol(rest, &pos);
      } catch (...) {
        fail(ErrorCode::ParseError, "bad exponent in '" + s + "'");
      }
      if (pos != rest.size()) fail(ErrorCode::ParseError, "bad exponent in '" + s + "'");
      if (exp10 > 100000 || exp10 < -100000)
        fail(ErrorCode::ParseError, "exponent out of range in '" + s + "'");
      break;
    } else {
      fail(ErrorCode::ParseError, "bad scalar literal '" + s + "'");
    }
  }
  if (!seen_digit) fail(ErrorCode::ParseError, "bad scalar literal '" + s + "'");
  if (digits.empty()) digits = "0";

  Rat r;
  mpz_set_str(mpq_numref(r.q), digits.c_str(), 10);
  mpz_set_ui(mpq_denref(r.q), 1);
  long net = exp10 - frac_digits;
  if (net > 0) {
    mpz_t p;
    mpz_init(p);
    mpz_ui_pow_ui(p, 10, static_cast<unsigned long>(net));
    mpz_mul(mpq_numref(r.q), mpq_numref(r.q), p);
    mpz_clear(p);
  } else if (net < 0) {
    mpz_ui_pow_ui(mpq_denref(r.q), 10, static_cast<unsigned long>(-net));
  }
  if (neg) mpz_neg(mpq_numref(r.q), mpq_numref(r.q));
  mpq_canonicalize(r.q);
  return r;
}

}  // namespace
}  // namespace detail

// ---------------------------------------------------------------------------
// Scalar

using detail::Engine;
using detail::Op;
using detail::ScalarAccess;

namespace {

void require_same_mode(const Scalar& a, const Scalar& b) {
  if (a.mode() != b.mode())
    fail(ErrorCode::MixedMode, "cannot mix float and rational scalars in one computation");
}

double checked_double(double v, const char* what) {
  if (!std::isfinite(v)) fail(ErrorCode::InvalidArgument, std::string(what) + " is not finite");
  return v;
}

}  // namespace

Scalar::Scalar() : mode_(NumericMode::Float64), value_(0.0), node_(nullptr) {}

Scalar Scalar::real(double value) {
  Scalar s;
  s.mode_ = NumericMode::Float64;
  s.value_ = checked_double(value, "float scalar");
  return s;
}

Scalar Scalar::rational(long long num, long long den) {
  return ScalarAccess::wrap(Engine::instance().leaf(detail::Rat::of(num, den)));
}

Scalar Scalar::parse(std::string_view text, NumericMode mode) {
  if (mode == NumericMode::Rational)
    return ScalarAccess::wrap(Engine::instance().leaf(detail::parse_rational_text(text)));
  std::string s(text);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  while (end && *end && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (!end || *end != '\0' || s.empty())
    fail(ErrorCode::ParseError, "bad float literal '" + s + "'");
  return real(v);
}

Scalar Scalar::zero(NumericMode mode) {
  return mode == NumericMode::Rational ? rational(0) : real(0.0);
}
Scalar Scalar::one(NumericMode mode) {
  return mode == NumericMode::Rational ? rational(1) : real(1.0);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64)
    return Scalar::real(checked_double(a.value_ + b.value_, "sum"));
  return ScalarAccess::wrap(Engine::instance().make(Op::Add, a.node_, b.node_));
}

Scalar operator-(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64)
    return Scalar::real(checked_double(a.value_ - b.value_, "difference"));
  return ScalarAccess::wrap(Engine::instance().make(Op::Sub, a.node_, b.node_));
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64)
    return Scalar::real(checked_double(a.value_ * b.value_, "product"));
  return ScalarAccess::wrap(Engine::instance().make(Op::Mul, a.node_, b.node_));
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64) {
    if (b.value_ == 0.0) fail(ErrorCode::DivisionByZero, "division by zero scalar");
    return Scalar::real(checked_double(a.value_ / b.value_, "quotient"));
  }
  return ScalarAccess::wrap(Engine::instance().make(Op::Div, a.node_, b.node_));
}

Scalar Scalar::operator-() const {
  if (mode_ == NumericMode::Float64) return real(-value_);
  return ScalarAccess::wrap(
      Engine::instance().make(Op::Sub, Engine::instance().zero_node, node_));
}

Scalar Scalar::sqrt() const {
  if (mode_ == NumericMode::Float64) {
    if (value_ < 0.0) fail(ErrorCode::InvalidArgument, "square root of negative scalar");
    return real(std::sqrt(value_));
  }
  return ScalarAccess::wrap(Engine::instance().make(Op::Sqrt, node_, nullptr));
}

Scalar Scalar::abs() const {
  if (mode_ == NumericMode::Float64) return real(std::fabs(value_));
  return ScalarAccess::wrap(Engine::instance().abs_of(node_));
}

int Scalar::sign() const {
  if (mode_ == NumericMode::Float64) return value_ < 0 ? -1 : value_ > 0 ? 1 : 0;
  return Engine::instance().sign(node_);
}

std::strong_ordering Scalar::compare(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64) {
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (a.value_ > b.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  return Engine::instance().compare(a.node_, b.node_);
}

bool Scalar::approx_eq(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64)
    return std::fabs(a.value_ - b.value_) <= Config::float_tolerance();
  return compare(a, b) == std::strong_ordering::equal;
}

bool Scalar::leq(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64)
    return a.value_ <= b.value_ + Config::float_tolerance();
  return compare(a, b) != std::strong_ordering::greater;
}

bool Scalar::lt(const Scalar& a, const Scalar& b) {
  require_same_mode(a, b);
  if (a.mode_ == NumericMode::Float64)
    return a.value_ < b.value_ - Config::float_tolerance();
  return compare(a, b) == std::strong_ordering::less;
}

double Scalar::to_double() const {
  if (mode_ == NumericMode::Float64) return value_;
  return Engine::instance().approx(node_);
}

std::string Scalar::str() const {
  if (mode_ == NumericMode::Float64) {
    char buf[32];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value_);
    (void)ec;
    return std::string(buf, ptr);
  }
  return Engine::instance().render(node_, 1u << 20);
}

std::optional<std::string> Scalar::fraction(std::size_t max_bits) const {
  if (mode_ == NumericMode::Float64) return std::nullopt;
  std::lock_guard lk(Engine::instance().mu);
  if (const detail::Rat* r = Engine::instance().materialize(node_, max_bits))
    return r->str();
  return std::nullopt;
}

const Scalar& scalar_min(const Scalar& a, const Scalar& b) {
  return Scalar::compare(b, a) == std::strong_ordering::less ? b : a;
}
const Scalar& scalar_max(const Scalar& a, const Scalar& b) {
  return Scalar::compare(b, a) == std::strong_ordering::greater ? b : a;
}

}  // namespace mvfp
