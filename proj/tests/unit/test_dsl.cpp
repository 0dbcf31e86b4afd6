#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "radnorm/dsl.hpp"
#include "radnorm/errors.hpp"
#include "radnorm/kernels.hpp"
#include "radnorm/norms.hpp"
#include "support.hpp"

using namespace radnorm;
using radnorm::test::Gen;
namespace d = radnorm::dsl;

namespace {

d::ExprPtr node(auto n) { return std::make_shared<const d::Expr>(d::Expr{std::move(n)}); }

const std::vector<std::string>& corpus() {
  static const std::vector<std::string> c = {
      "z",
      "1",
      "z^2 + 0.5 z",
      "z^0",
      "3 z^7 - 2 z + 1",
      "K(0.9, 2)",
      "K(0, 5)",
      "0.25 K(0.99, 1.75)",
      "U(0.001; 2, 1.25; 0)",
      "U(0.1; 3, 3; 1.5) + K(0.5, 2)",
      "2 (z + 1) - (z - K(0.3, 0.5))",
      "((z))",
      "1e-3 z^3 + 2.5E+2",
      ".5 z",
      "z - z - z",
      "2 3",
      "  z ^ 4\t+\n1  ",
  };
  return c;
}

std::complex<double> at(const DiscFunction& f, double x, double theta) { return f.evaluate(DiscPoint(x, theta)); }

std::string fuzz_input(Gen& gen) {
  static const std::string alphabet = "zKU0123456789.eE+-^(),; \t";
  std::string s;
  if (gen.coin()) {
    s = corpus()[static_cast<std::size_t>(gen.integer(0, static_cast<int>(corpus().size()) - 1))];
    const int edits = gen.integer(1, 4);
    for (int i = 0; i < edits; ++i) {
      const int op = gen.integer(0, 2);
      const std::size_t pos = s.empty() ? 0 : static_cast<std::size_t>(gen.integer(0, static_cast<int>(s.size())));
      if (op == 0 || s.empty()) {
        s.insert(pos, 1, alphabet[static_cast<std::size_t>(gen.integer(0, static_cast<int>(alphabet.size()) - 1))]);
      } else if (op == 1 && pos < s.size()) {
        s.erase(pos, 1);
      } else if (pos < s.size()) {
        s[pos] = static_cast<char>(gen.integer(0, 255));
      }
    }
  } else {
    const int len = gen.integer(0, 24);
    for (int i = 0; i < len; ++i) {
      s.push_back(gen.coin() ? alphabet[static_cast<std::size_t>(gen.integer(0, static_cast<int>(alphabet.size()) - 1))]
                             : static_cast<char>(gen.integer(0, 255)));
    }
  }
  return s;
}

}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("parse examples") {
    const d::ExprPtr e = d::parse("z^2 + 0.5 z");
    const d::ExprPtr expected = node(d::Add{node(d::Pow{2}), node(d::Mul{0.5, node(d::Var{})})});
    CHECK(*e == *expected);
    CHECK(*d::parse("K(0.9, 2)") == *node(d::Kernel{0.9, 2.0}));
    CHECK(*d::parse("U(0.01; 2, 1.25; 0.5)") == *node(d::UShift{0.01, 2.0, 1.25, 0.5}));
  }

  TEST_CASE("parse errors carry offset and expected tokens") {
    try {
      d::parse("z^");
      FAIL("expected a parse error");
    } catch (const ParseError& err) {
      CHECK(err.offset() == 2);
      REQUIRE(err.expected().size() == 1);
      CHECK(err.expected().front() == "unsigned integer");
    }
    const std::vector<std::pair<std::string, std::size_t>> cases = {
        {"", 0}, {"z +", 3}, {"(z", 2}, {"K(0.5 2)", 6}, {"z z", 2}, {"y", 0}, {"1e", 2}, {"-z", 0},
    };
    for (const auto& [src, offset] : cases) {
      try {
        d::parse(src);
        FAIL("expected a parse error for '" << src << "'");
      } catch (const ParseError& err) {
        CHECK_MESSAGE(err.offset() == offset, "source '" << src << "'");
        CHECK_FALSE(err.expected().empty());
      }
    }
  }

  TEST_CASE("range errors") {
    CHECK_THROWS_AS(d::parse("K(1, 2)"), RangeError);
    CHECK_THROWS_AS(d::parse("K(1.5, 2)"), RangeError);
    CHECK_THROWS_AS(d::parse("K(0.5, 0)"), RangeError);
    CHECK_THROWS_AS(d::parse("U(0.5; 2, 2; 0)"), RangeError);
    CHECK_THROWS_AS(d::parse("U(0; 2, 2; 0)"), RangeError);
    CHECK_THROWS_AS(d::parse("U(0.1; 1, 2; 0)"), RangeError);
    CHECK_THROWS_AS(d::parse("z^5000"), RangeError);
    CHECK_THROWS_AS(d::parse("1e999"), RangeError);
    try {
      d::parse("K( 1.0, 2)");
      FAIL("expected a range error");
    } catch (const RangeError& err) {
      CHECK(err.offset() == 3);
    }
  }

  TEST_CASE("lowering examples") {
    const DiscFunction one = d::compile("1");
    Gen gen(601);
    for (int i = 0; i < 20; ++i) CHECK(one.evaluate(gen.point()) == std::complex<double>(1.0, 0.0));

    const DiscFunction two_z = d::compile("z + z");
    const auto* series = std::get_if<fn::PowerSeries>(&two_z.node());
    REQUIRE(series != nullptr);
    REQUIRE(series->coefficients.size() == 2);
    CHECK(series->coefficients[0] == std::complex<double>(0.0, 0.0));
    CHECK(series->coefficients[1] == std::complex<double>(2.0, 0.0));

    const ExponentPair e(2, 2);
    const NormResult a = rm_norm(d::compile("K(0.9,2)"), e);
    const NormResult b = rm_norm(test_kernel({0.9, 2.0}), e);
    CHECK(a.value == b.value);
    CHECK(a.error_estimate == b.error_estimate);
    CHECK(a.evaluations == b.evaluations);
  }

  TEST_CASE("U lowers to the rotated normalised pole") {
    const DiscFunction f = d::compile("U(0.01; 2, 1.25; 0.7)");
    const DiscFunction g = u_delta(0.01, ExponentPair(2, 1.25), 0.7);
    Gen gen(607);
    for (int i = 0; i < 20; ++i) {
      const DiscPoint z = gen.point();
      CHECK(f.evaluate(z) == g.evaluate(z));
    }
  }

  TEST_CASE("round trip over the corpus") {
    for (const std::string& s : corpus()) {
      const d::ExprPtr e = d::parse(s);
      const std::string printed = d::print(*e);
      const d::ExprPtr again = d::parse(printed);
      CHECK_MESSAGE(*e == *again, "source '" << s << "' printed as '" << printed << "'");
      CHECK(d::print(*again) == printed);
    }
  }

  TEST_CASE("round trip on random trees") {
    Gen gen(613);
    std::function<d::ExprPtr(int)> tree = [&](int depth) -> d::ExprPtr {
      switch (gen.integer(0, depth > 0 ? 7 : 3)) {
        case 0:
          return node(d::Var{});
        case 1:
          return node(d::Number{gen.log_uniform(1e-5, 1e5)});
        case 2:
          return node(d::Pow{static_cast<unsigned>(gen.integer(0, 30))});
        case 3:
          return gen.coin() ? node(d::Kernel{gen.uniform(0.0, 0.999), gen.uniform(0.1, 4.0)})
                            : node(d::UShift{gen.uniform(1e-6, 0.49), gen.uniform(1.01, 5.0),
                                             gen.uniform(1.01, 5.0), gen.uniform(0.0, 7.0)});
        case 4:
          return node(d::Add{tree(depth - 1), tree(depth - 1)});
        case 5:
          return node(d::Sub{tree(depth - 1), tree(depth - 1)});
        default:
          return node(d::Mul{gen.log_uniform(1e-3, 1e3), tree(depth - 1)});
      }
    };
    for (int i = 0; i < 300; ++i) {
      const d::ExprPtr e = tree(4);
      const std::string printed = d::print(*e);
      CHECK_MESSAGE(*d::parse(printed) == *e, printed);
    }
  }

  TEST_CASE("parse is total under fuzzed input") {
    Gen gen(617);
    int accepted = 0;
    for (int i = 0; i < 5000; ++i) {
      const std::string s = fuzz_input(gen);
      try {
        const DiscFunction f = d::compile(s);
        (void)f.evaluate(DiscPoint(0.3, 1.0));
        ++accepted;
      } catch (const ParseError& err) {
        CHECK(err.offset() <= s.size());
      } catch (const RangeError& err) {
        CHECK(err.offset() <= s.size());
      }
    }
    CHECK(accepted > 0);
  }

  TEST_CASE("deep nesting is rejected, not overflowed") {
    const std::string deep = std::string(100000, '(') + "z" + std::string(100000, ')');
    CHECK_THROWS_AS(d::parse(deep), ParseError);
    const std::string shallow = std::string(50, '(') + "z" + std::string(50, ')');
    CHECK(*d::parse(shallow) == *node(d::Var{}));
  }

  TEST_CASE("lowering is homomorphic over +") {
    Gen gen(619);
    for (int i = 0; i < 100; ++i) {
      const std::string& a = corpus()[static_cast<std::size_t>(gen.integer(0, static_cast<int>(corpus().size()) - 1))];
      const std::string& b = corpus()[static_cast<std::size_t>(gen.integer(0, static_cast<int>(corpus().size()) - 1))];
      const DiscFunction fa = d::compile(a);
      const DiscFunction fb = d::compile(b);
      const DiscFunction fab = d::compile(a + " + (" + b + ")");
      for (int k = 0; k < 5; ++k) {
        const double x = gen.log_uniform(1e-3, 1.0);
        const double theta = gen.uniform(0.0, kTwoPi);
        const std::complex<double> va = at(fa, x, theta);
        const std::complex<double> vb = at(fb, x, theta);
        CHECK(std::abs(at(fab, x, theta) - (va + vb)) <= 1e-12 * (std::abs(va) + std::abs(vb) + 1.0));
      }
    }
  }

  TEST_CASE("grammar text documents every construct") {
    for (const char* token : {"expr", "term", "atom", "K(", "U(", "'^'", "number"}) {
      CHECK(d::kGrammar.find(token) != std::string_view::npos);
    }
  }
}
