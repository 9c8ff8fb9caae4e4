#include <doctest.h>

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/students_t.hpp>
#include <json.hpp>

#include "support.hpp"
#include "syncact/errors.hpp"
#include "syncact/matching.hpp"
#include "syncact/special.hpp"

using namespace syncact;
using namespace syncact::matching;

namespace {

CorrelationMatrix from_r(const Matrix& r, std::size_t length = 100) {
  CorrelationMatrix c{r, Matrix(r.rows(), r.cols()), length};
  for (std::size_t i = 0; i < r.size(); ++i) c.p.data()[i] = pearson_pvalue(r.data()[i], length);
  return c;
}

Matrix affine_columns(Rng& rng, const Matrix& m) {
  Matrix out = m;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    const double a = std::exp(rng.uniform(-3, 3));
    const double b = rng.uniform(-50, 50);
    for (std::size_t r = 0; r < m.rows(); ++r) out(r, c) = a * m(r, c) + b;
  }
  return out;
}

}  // namespace

TEST_SUITE("special functions") {
  TEST_CASE("incomplete beta closed forms") {
    CHECK(incomplete_beta(1, 1, 0.3) == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(incomplete_beta(2, 1, 0.5) == doctest::Approx(0.25).epsilon(1e-14));
    CHECK(incomplete_beta(1, 0.5, 0.64) == doctest::Approx(1 - std::sqrt(0.36)).epsilon(1e-14));
    CHECK(incomplete_beta(3, 4, 0.0) == 0.0);
    CHECK(incomplete_beta(3, 4, 1.0) == 1.0);
  }

  TEST_CASE("two-sided t tail agrees with quadrature and Boost") {
    Rng rng(1);
    for (int trial = 0; trial < 300; ++trial) {
      const double df = double(1 + rng.below(60));
      const double t = rng.uniform(-8, 8);
      const double ours = student_t_two_sided(t, df);
      CHECK(std::fabs(ours - oracle::t_two_sided(t, df)) < 1e-9);
      const boost::math::students_t dist(df);
      CHECK(std::fabs(ours - 2 * boost::math::cdf(boost::math::complement(dist, std::fabs(t)))) < 1e-10);
    }
  }
}

TEST_SUITE("pearson") {
  TEST_CASE("spec examples") {
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{2, 4, 6}) == doctest::Approx(1.0));
    CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{3, 2, 1}) == doctest::Approx(-1.0));
    CHECK(pearson(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 3, 2, 4}) ==
          doctest::Approx(0.8).epsilon(1e-15));
  }

  TEST_CASE("matches the two-pass oracle") {
    Rng rng(2);
    for (int trial = 0; trial < 500; ++trial) {
      const std::size_t n = 3 + rng.below(50);
      const auto x = testing::random_series(rng, n);
      auto y = testing::random_series(rng, n);
      const double mix = rng.uniform(-1, 1);
      for (std::size_t i = 0; i < n; ++i) y[i] += mix * x[i];
      CHECK(std::fabs(pearson(x, y) - oracle::pearson(x, y)) < 1e-12);
    }
  }

  TEST_CASE("affine invariance and sign flip") {
    Rng rng(3);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 3 + rng.below(40);
      const auto x = testing::random_series(rng, n);
      const auto y = testing::random_series(rng, n);
      const double a = std::exp(rng.uniform(-4, 4)), b = rng.uniform(-100, 100);
      std::vector<double> pos(n), neg(n);
      for (std::size_t i = 0; i < n; ++i) {
        pos[i] = a * x[i] + b;
        neg[i] = -a * x[i] + b;
      }
      const double r = pearson(x, y);
      CHECK(std::fabs(pearson(pos, y) - r) < 1e-12);
      CHECK(std::fabs(pearson(neg, y) + r) < 1e-12);
      CHECK(std::fabs(r) <= 1.0);
    }
  }

  TEST_CASE("zero variance gives NaN") {
    CHECK(std::isnan(pearson(std::vector<double>{2, 2, 2}, std::vector<double>{1, 2, 3})));
    CHECK(std::isnan(pearson(std::vector<double>{1e6, 1e6, 1e6, 1e6}, std::vector<double>{1, 2, 3, 5})));
  }

  TEST_CASE("length checks") {
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2}), InputError);
    CHECK_THROWS_AS(pearson(std::vector<double>{1, 2}, std::vector<double>{1, 2}), InputError);
  }
}

TEST_SUITE("pearson p-value") {
  TEST_CASE("degenerate values") {
    CHECK(pearson_pvalue(0.0, 10) == 1.0);
    CHECK(pearson_pvalue(1.0, 10) == 0.0);
    CHECK(pearson_pvalue(-1.0, 10) == 0.0);
    CHECK(std::isnan(pearson_pvalue(std::nan(""), 10)));
    CHECK_THROWS_AS(pearson_pvalue(0.5, 2), InputError);
  }

  TEST_CASE("r = 0.8 with four samples") {
    // df = 2 has the closed form p = 1 − |r|.
    const double t = 0.8 * std::sqrt(2.0 / (1 - 0.64));
    CHECK(t == doctest::Approx(1.8856).epsilon(1e-4));
    CHECK(pearson_pvalue(0.8, 4) == doctest::Approx(0.2).epsilon(1e-13));
  }

  TEST_CASE("quadrature oracle for df 2 to 50") {
    Rng rng(4);
    for (std::size_t df = 2; df <= 50; ++df) {
      for (int k = 0; k < 5; ++k) {
        const double r = rng.uniform(-0.99, 0.99);
        CHECK(std::fabs(pearson_pvalue(r, df + 2) - oracle::pearson_pvalue(r, df + 2)) < 1e-8);
      }
    }
  }

  TEST_CASE("monotone decreasing in |r|") {
    for (std::size_t len : {3u, 5u, 20u, 200u}) {
      double last = 2.0;
      for (double r = 0.0; r < 1.0; r += 0.01) {
        const double p = pearson_pvalue(r, len);
        CHECK(p <= last);
        CHECK(p == doctest::Approx(pearson_pvalue(-r, len)));
        last = p;
      }
    }
  }
}

TEST_SUITE("correlation matrix") {
  TEST_CASE("self correlation has a unit diagonal") {
    Rng rng(5);
    const Matrix f = rng.normal_matrix(30, 5);
    const auto c = correlation_matrix(f, f);
    for (std::size_t i = 0; i < 5; ++i) CHECK(c.r(i, i) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(c.length == 30);
  }

  TEST_CASE("orthogonal designed columns") {
    const std::size_t t = 64;
    Matrix f(t, 2), g(t, 2);
    for (std::size_t i = 0; i < t; ++i) {
      const double a = 2 * M_PI * double(i) / double(t);
      f(i, 0) = std::sin(a);
      f(i, 1) = std::cos(2 * a);
      g(i, 0) = std::cos(a);
      g(i, 1) = std::sin(3 * a);
    }
    const auto c = correlation_matrix(f, g);
    for (double v : c.r.data()) CHECK(std::fabs(v) < 1e-12);
  }

  TEST_CASE("entrywise equal to looped pearson, independent of threads") {
    Rng rng(6);
    const Matrix f = rng.normal_matrix(20, 3);
    const Matrix g = rng.normal_matrix(20, 4);
    const auto c1 = correlation_matrix(f, g, 1);
    const auto c3 = correlation_matrix(f, g, 3);
    CHECK(c1.r == c3.r);
    CHECK(c1.p == c3.p);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        CHECK(c1.r(i, j) == pearson(f.column(i), g.column(j)));
        CHECK(c1.p(i, j) == pearson_pvalue(c1.r(i, j), 20));
      }
    }
  }

  TEST_CASE("unequal lengths") { CHECK_THROWS_AS(correlation_matrix(Matrix(5, 2), Matrix(6, 2)), InputError); }
}

TEST_SUITE("pairing") {
  TEST_CASE("obvious argmax") {
    const auto res = pair_neurons(from_r(Matrix::from_rows({{0.9, 0.1}, {0.2, 0.8}})), Direction::kFbnToFilter);
    REQUIRE(res.pairs.size() == 2);
    CHECK(res.pairs[0].target == 0);
    CHECK(res.pairs[1].target == 1);
    CHECK(res.mean_r == doctest::Approx(0.85));
  }

  TEST_CASE("ties go to the lowest target") {
    const auto res = pair_neurons(from_r(Matrix::from_rows({{0.2, 0.5, 0.1, 0.5}})), Direction::kFbnToFilter);
    CHECK(res.pairs[0].target == 1);
  }

  TEST_CASE("reverse direction pairs columns") {
    const auto res = pair_neurons(from_r(Matrix::from_rows({{0.9, 0.1, 0.3}, {0.2, 0.8, 0.4}})),
                                  Direction::kFilterToFbn);
    REQUIRE(res.pairs.size() == 3);
    CHECK(res.pairs[0].target == 0);
    CHECK(res.pairs[1].target == 1);
    CHECK(res.pairs[2].target == 1);
    CHECK(res.pairs[2].r == 0.4);
  }

  TEST_CASE("NaN cells are skipped and all-NaN rows are unpaired") {
    const double nan = std::nan("");
    const auto res = pair_neurons(from_r(Matrix::from_rows({{nan, 0.3}, {nan, nan}, {0.5, 0.1}})),
                                  Direction::kFbnToFilter);
    CHECK(res.pairs[0].target == 1);
    CHECK_FALSE(res.pairs[1].paired);
    CHECK(res.unpaired == 1);
    CHECK(res.mean_r == doctest::Approx(0.4));
    CHECK(res.ratio() == "1/3");
  }

  TEST_CASE("significance ratio counts p above alpha") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix r = rng.uniform_matrix(1 + rng.below(10), 1 + rng.below(10), 0.4);
      const auto c = from_r(r, 20);
      const auto res = pair_neurons(c, Direction::kFbnToFilter, 0.05);
      std::size_t count = 0;
      for (const auto& p : res.pairs) count += p.p > 0.05;
      CHECK(res.nonsignificant == count);
      CHECK(res.ratio() == std::to_string(count) + "/" + std::to_string(r.rows()));
    }
  }

  TEST_CASE("square self correlation maps each neuron to itself") {
    Rng rng(8);
    const Matrix f = rng.normal_matrix(40, 6);
    const auto res = pair_neurons(correlation_matrix(f, f), Direction::kFbnToFilter);
    for (std::size_t i = 0; i < 6; ++i) CHECK(res.pairs[i].target == i);
  }

  TEST_CASE("invariant under positive affine transforms of every series") {
    Rng rng(9);
    for (int trial = 0; trial < 30; ++trial) {
      const Matrix f = rng.normal_matrix(25, 5);
      const Matrix g = rng.normal_matrix(25, 9);
      for (auto dir : {Direction::kFbnToFilter, Direction::kFilterToFbn}) {
        const auto base = pair_neurons(correlation_matrix(f, g), dir);
        const auto moved = pair_neurons(correlation_matrix(affine_columns(rng, f), affine_columns(rng, g)), dir);
        for (std::size_t i = 0; i < base.pairs.size(); ++i) {
          CHECK(base.pairs[i].target == moved.pairs[i].target);
          CHECK(std::fabs(base.pairs[i].r - moved.pairs[i].r) < 1e-12);
        }
        CHECK(base.nonsignificant == moved.nonsignificant);
      }
    }
  }

  TEST_CASE("direction names") {
    CHECK(parse_direction("fbn-to-filter") == Direction::kFbnToFilter);
    CHECK(parse_direction(direction_name(Direction::kFilterToFbn)) == Direction::kFilterToFbn);
    CHECK_THROWS_AS(parse_direction("sideways"), InputError);
  }
}

TEST_SUITE("summary") {
  PairingResult result_with(double mean, std::size_t nonsig, std::size_t m) {
    PairingResult r;
    r.pairs.resize(m);
    r.mean_r = mean;
    r.nonsignificant = nonsig;
    return r;
  }

  TEST_CASE("formatting of one result") {
    const std::vector<LabeledPairing> in{{"ResNet-18", "Block #4", "Run 1", result_with(0.285, 0, 64)}};
    const auto rows = summarize(in);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].mean_text == "0.2850");
    CHECK(rows[0].ratio == "0/64");
    CHECK(summary_csv(rows) == "model,layer,run,mean_pcc,ratio,nonsignificant,sources\n"
                               "ResNet-18,Block #4,Run 1,0.2850,0/64,0,64\n");
    const std::string table = summary_table(rows);
    CHECK(table.find("Methods") != std::string::npos);
    CHECK(table.find("Run 1 PCC") != std::string::npos);
    CHECK(std::count(table.begin(), table.end(), '\n') == 2);
  }

  TEST_CASE("two of 64 not significant") {
    const std::vector<LabeledPairing> in{{"m", "l", "r", result_with(0.2, 2, 64)}};
    CHECK(summarize(in)[0].ratio == "2/64");
  }

  TEST_CASE("per-run means match recomputation") {
    Rng rng(10);
    std::vector<LabeledPairing> in;
    std::vector<double> expected;
    for (int run = 0; run < 4; ++run) {
      const Matrix f = rng.normal_matrix(30, 4);
      const Matrix g = rng.normal_matrix(30, 6);
      const auto res = pair_neurons(correlation_matrix(f, g), Direction::kFbnToFilter);
      double s = 0.0;
      for (std::size_t i = 0; i < 4; ++i) {
        double best = -2.0;
        for (std::size_t j = 0; j < 6; ++j) best = std::max(best, oracle::pearson(f.column(i), g.column(j)));
        s += best;
      }
      expected.push_back(s / 4);
      in.push_back({"m", "l", "Run " + std::to_string(run + 1), res});
    }
    const auto rows = summarize(in);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::fabs(rows[i].mean_r - expected[i]) < 1e-12);
  }

  TEST_CASE("layer table marks best and second best per run") {
    std::vector<LabeledPairing> in;
    const std::vector<std::string> layers{"Block #1", "Block #2", "Block #3", "Block #4"};
    // ResNet-18 values of the layer comparison, runs 1 and 2.
    const double run1[] = {0.2401, 0.2534, 0.2743, 0.2415};
    const double run2[] = {0.2012, 0.2150, 0.2483, 0.2267};
    for (std::size_t l = 0; l < 4; ++l) {
      in.push_back({"ResNet-18", layers[l], "Run 1", result_with(run1[l], l == 0 ? 1 : 0, 64)});
      in.push_back({"ResNet-18", layers[l], "Run 2", result_with(run2[l], l == 0 ? 2 : 0, 64)});
    }
    const std::string table = summary_table(summarize(in));
    CHECK(table.find("0.2743 (1)") != std::string::npos);
    CHECK(table.find("0.2534 (2)") != std::string::npos);
    CHECK(table.find("0.2483 (1)") != std::string::npos);
    CHECK(table.find("0.2267 (2)") != std::string::npos);
    CHECK(table.find("0.2401  ") != std::string::npos);
    CHECK(table.find("1/64") != std::string::npos);
    CHECK(table.find("2/64") != std::string::npos);
    CHECK(std::count(table.begin(), table.end(), '\n') == 5);
  }
}

TEST_SUITE("cross annotation") {
  PairingResult one_pair(std::size_t src, std::size_t dst, double r) {
    PairingResult res;
    res.pairs.push_back({src, dst, r, 1e-6, true});
    return res;
  }

  TEST_CASE("joins the two descriptions") {
    LabelTable fbn, filt;
    fbn.entries[25] = "place, navigation";
    filt.entries[131] = "rock";
    const auto entries = cross_annotate(one_pair(25, 131, 0.41), fbn, filt);
    REQUIRE(entries.size() == 1);
    CHECK(entries[0].source_description == "place, navigation");
    CHECK(entries[0].target_description == "rock");
    const auto line = nlohmann::json::parse(annotations_jsonl(entries));
    CHECK(line["source"] == 25);
    CHECK(line["source_description"] == "place, navigation");
    CHECK(line["target_description"] == "rock");
    const std::string table = annotations_table(entries);
    const auto row = table.substr(table.find('\n') + 1);
    CHECK(row.find("place, navigation") < row.find("->"));
    CHECK(row.find("->") < row.find("131"));
    CHECK(row.find("131") < row.find("rock"));
  }

  TEST_CASE("empty tables give placeholders") {
    PairingResult res;
    res.pairs = {{0, 3, 0.2, 0.01, true}, {1, 2, 0.6, 0.001, true}, {2, 0, std::nan(""), std::nan(""), false}};
    const auto entries = cross_annotate(res, {}, {});
    REQUIRE(entries.size() == 2);
    CHECK(entries[0].source == 1);
    CHECK(entries[1].source == 0);
    for (const auto& e : entries) {
      CHECK(e.source_description == kUnlabeled);
      CHECK(e.target_description == kUnlabeled);
    }
  }

  TEST_CASE("label insertion order does not matter") {
    Rng rng(11);
    PairingResult res;
    for (std::size_t i = 0; i < 10; ++i) res.pairs.push_back({i, 9 - i, rng.uniform(), 0.01, true});
    std::vector<std::size_t> ids(10);
    for (std::size_t i = 0; i < 10; ++i) ids[i] = i;
    LabelTable a, b;
    for (auto id : ids) a.entries[id] = "label " + std::to_string(id);
    rng.shuffle(ids.begin(), ids.end());
    for (auto id : ids) b.entries[id] = "label " + std::to_string(id);
    CHECK(annotations_jsonl(cross_annotate(res, a, a)) == annotations_jsonl(cross_annotate(res, b, b)));
  }

  TEST_CASE("table aligns non-ASCII text by code points") {
    LabelTable fbn;
    fbn.entries[0] = "émotion";
    const auto text = annotations_table(cross_annotate(one_pair(0, 1, 0.5), fbn, {}));
    CHECK(text.find("émotion") != std::string::npos);
    CHECK(text.find(std::string(kUnlabeled)) != std::string::npos);
  }
}
