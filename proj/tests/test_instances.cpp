#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "bqp/instances.hpp"
#include "bqp/rounding.hpp"
#include "bqp/vector_admm.hpp"
#include "oracles.hpp"

using namespace bqp;

namespace {

std::string write_temp(const std::string& name, const std::string& bytes) {
  const auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path, std::ios::binary);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.close();
  return path.string();
}

std::string error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_CASE("sbm: validation, determinism, truth layout") {
  CHECK_THROWS(sbm_generate({10, 6, 0.9, 0.1, 0}));   // m > n/2
  CHECK_THROWS(sbm_generate({10, 5, 0.1, 0.9, 0}));   // q >= p
  SBMSample a = sbm_generate({20, 10, 0.7, 0.1, 5});
  SBMSample b = sbm_generate({20, 10, 0.7, 0.1, 5});
  REQUIRE(a.graph.edges().size() == b.graph.edges().size());
  for (std::size_t i = 0; i < a.graph.edges().size(); ++i) {
    CHECK(a.graph.edges()[i].u == b.graph.edges()[i].u);
    CHECK(a.graph.edges()[i].v == b.graph.edges()[i].v);
  }
  int plus = 0;
  for (Eigen::Index i = 0; i < a.truth.size(); ++i)
    if (a.truth[i] == 1.0) ++plus;
  CHECK(plus == 10);
  SBMSample c = sbm_generate({20, 10, 0.7, 0.1, 6});
  CHECK(a.graph.edges().size() != c.graph.edges().size());  // overwhelmingly likely
}

TEST_CASE("sbm: near-clique regime is recovered by the community pipeline") {
  SBMSample s = sbm_generate({20, 10, 0.999, 0.001, 3});
  CostMatrix C = build_community_cost(s.graph, 0.999, 0.001);
  VectorConfig cfg;
  cfg.seed = 1;
  cfg.rho0 = 0.1;
  VectorResult r = solve_vector(C, cfg);
  CHECK(recovery_rate(sign_round(r.state.x), s.truth) == doctest::Approx(1.0));
}

TEST_CASE("sbm: empirical intra-edge count stays within 5% of expectation") {
  const int n = 30, m = 15;
  const double p = 0.5, q = 0.1;
  const double intra_pairs = 2.0 * (15.0 * 14.0 / 2.0);
  double total = 0.0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    SBMSample s = sbm_generate({n, m, p, q, seed});
    int intra = 0;
    for (const Edge& e : s.graph.edges()) {
      const bool eu = e.u <= m, ev = e.v <= m;
      if (eu == ev) ++intra;
    }
    total += intra;
  }
  const double mean = total / 100.0;
  CHECK(std::abs(mean - p * intra_pairs) <= 0.05 * p * intra_pairs);
}

TEST_CASE("rudy parsing: basic, signed, and error cases") {
  Graph k2 = parse_rudy("2 1\n1 2 5\n");
  CHECK(k2.node_count() == 2);
  REQUIRE(k2.edges().size() == 1);
  CHECK(k2.edges()[0].w == doctest::Approx(5.0));

  Graph signed_g = parse_rudy("3 2\n1 2 1\n2 3 -1\n");
  CHECK(signed_g.edges()[1].w == doctest::Approx(-1.0));
  CHECK_THROWS(parse_rudy("3 2\n1 2 1\n2 3 -1\n", /*allow_nonpositive=*/false));

  // Windows endings and blank lines are tolerated.
  Graph crlf = parse_rudy("\r\n2 1\r\n\r\n1 2 2.5\r\n");
  CHECK(crlf.edges()[0].w == doctest::Approx(2.5));

  CHECK(error_of([] { parse_rudy("2 1\n1 2\n"); }).find("line 2") != std::string::npos);
  CHECK(error_of([] { parse_rudy("2 1\n1 3 1\n"); }).find("out of range") !=
        std::string::npos);
  CHECK(error_of([] { parse_rudy("2 2\n1 2 1\n"); }).find("declares 2") !=
        std::string::npos);
  CHECK(error_of([] { parse_rudy("junk\n"); }).find("line 1") != std::string::npos);
  CHECK_THROWS(parse_rudy(""));
}

TEST_CASE("rudy round-trip is the identity on (n, sorted edges)") {
  for (std::uint64_t seed : {1u, 2u}) {
    const Graph g = oracles::random_graph(12, 0.4, seed);
    const Graph back = parse_rudy(serialize_rudy(g));
    REQUIRE(back.node_count() == g.node_count());
    REQUIRE(back.edges().size() == g.edges().size());
    for (std::size_t i = 0; i < g.edges().size(); ++i) {
      CHECK(back.edges()[i].u == g.edges()[i].u);
      CHECK(back.edges()[i].v == g.edges()[i].v);
      CHECK(back.edges()[i].w == g.edges()[i].w);
    }
  }
}

TEST_CASE("bundled torus instances parse to 512 nodes, 6-regular") {
  for (const char* name : {"/g3-8.rudy", "/pm3-8-50.rudy"}) {
    std::ifstream in(std::string(BQP_DATA_DIR) + name, std::ios::binary);
    REQUIRE(in.good());
    std::stringstream buf;
    buf << in.rdbuf();
    const Graph g = parse_rudy(buf.str());
    CHECK(g.node_count() == 512);
    CHECK(g.edges().size() == 1536);  // 3 * 8^3 undirected torus edges
    Eigen::VectorXi degree = Eigen::VectorXi::Zero(512);
    for (const Edge& e : g.edges()) {
      degree[e.u - 1] += 1;
      degree[e.v - 1] += 1;
    }
    CHECK(degree.minCoeff() == 6);
    CHECK(degree.maxCoeff() == 6);
  }
}

TEST_CASE("torus generator: structure and weight families") {
  CHECK_THROWS(generate_torus3(2, TorusWeights::pm_one, 0));
  const Graph pm = generate_torus3(4, TorusWeights::pm_one, 9);
  CHECK(pm.node_count() == 64);
  CHECK(pm.edges().size() == 3 * 64);
  for (const Edge& e : pm.edges()) CHECK(std::abs(e.w) == doctest::Approx(1.0));

  const Graph ga = generate_torus3(3, TorusWeights::gaussian, 9, 1e5);
  for (const Edge& e : ga.edges()) {
    CHECK(e.w == std::round(e.w));
    CHECK(e.w != 0.0);
  }
  const Graph pm2 = generate_torus3(4, TorusWeights::pm_one, 9);
  for (std::size_t i = 0; i < pm.edges().size(); ++i)
    CHECK(pm.edges()[i].w == pm2.edges()[i].w);
}

TEST_CASE("pnm parsing: all four formats and the feature layout") {
  // 1x2 plain PGM, values 0 and 255, c = 0: position columns vanish.
  ImageFeatures a = parse_pnm("P2\n# comment\n2 1\n255\n0 255\n", 0.0);
  CHECK(a.n_pixels() == 2);
  Eigen::MatrixXd f = a.features();
  CHECK(f.rows() == 2);
  CHECK(f.cols() == 5);
  CHECK(f.row(0).head(3).isZero(0.0));
  CHECK(f(1, 0) == doctest::Approx(1.0));
  CHECK(f(1, 1) == doctest::Approx(1.0));
  CHECK(f(1, 2) == doctest::Approx(1.0));
  CHECK(f.col(3).isZero(0.0));
  CHECK(f.col(4).isZero(0.0));

  // 2x2 plain PPM with distinct corner colors.
  ImageFeatures b = parse_pnm(
      "P3\n2 2\n255\n255 0 0  0 255 0\n0 0 255  255 255 0\n", 1.0);
  CHECK(b.n_pixels() == 4);
  CHECK(b.colors(0, 0) == doctest::Approx(1.0));
  CHECK(b.colors(1, 1) == doctest::Approx(1.0));
  CHECK(b.colors(2, 2) == doctest::Approx(1.0));
  CHECK(b.coords(3, 0) == doctest::Approx(1.0));
  CHECK(b.coords(3, 1) == doctest::Approx(1.0));

  // Raw PGM (P5), one byte per sample.
  std::string p5 = "P5\n2 1\n255\n";
  p5.push_back(static_cast<char>(0));
  p5.push_back(static_cast<char>(128));
  ImageFeatures c = parse_pnm(p5, 0.5);
  CHECK(c.colors(1, 0) == doctest::Approx(128.0 / 255.0));

  // Raw PPM (P6), 16-bit big-endian samples.
  std::string p6 = "P6\n1 1\n65535\n";
  const unsigned char hi = 0x01, lo = 0x00;  // 256
  for (int ch = 0; ch < 3; ++ch) {
    p6.push_back(static_cast<char>(hi));
    p6.push_back(static_cast<char>(lo));
  }
  ImageFeatures d = parse_pnm(p6, 1.0);
  CHECK(d.colors(0, 0) == doctest::Approx(256.0 / 65535.0));
}

TEST_CASE("pnm parsing: malformed inputs") {
  CHECK(error_of([] { parse_pnm("P7\n1 1\n255\n0\n", 1.0); }).find("magic") !=
        std::string::npos);
  CHECK(error_of([] { parse_pnm("P2\n2 1\n255\n0\n", 1.0); }).find("truncated") !=
        std::string::npos);
  std::string short_p5 = "P5\n2 2\n255\n";
  short_p5.push_back('x');
  CHECK(error_of([&] { parse_pnm(short_p5, 1.0); }).find("truncated") !=
        std::string::npos);
  CHECK_THROWS(parse_pnm("P2\n0 1\n255\n", 1.0));
  CHECK_THROWS(parse_pnm("P2\n1 1\n70000\n0\n", 1.0));
  CHECK_THROWS(parse_pnm("P2\n1 1\n255\n300\n", 1.0));          // above maxval
  CHECK_THROWS(parse_pnm("P2\n100 100\n255\n", 1.0, 64));       // pixel cap
}

TEST_CASE("load_image reports the path on failure") {
  const std::string missing = "/nonexistent/definitely_missing.pgm";
  CHECK(error_of([&] { load_image(missing, 1.0); }).find(missing) !=
        std::string::npos);
  const std::string path = write_temp("bqp_test_bad.pgm", "P2\n1\n");
  CHECK(error_of([&] { load_image(path, 1.0); }).find(path) != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("8x8 two-tone image splits into its tone components") {
  // Left half black, right half white; write as plain PGM and run the
  // maxcut pipeline end to end.
  std::string pgm = "P2\n8 8\n255\n";
  for (int row = 0; row < 8; ++row) {
    for (int col = 0; col < 8; ++col) pgm += col < 4 ? "0 " : "255 ";
    pgm += "\n";
  }
  const std::string path = write_temp("bqp_test_twotone.pgm", pgm);
  ImageFeatures img = load_image(path, 0.0);
  std::remove(path.c_str());
  REQUIRE(img.n_pixels() == 64);

  CostMatrix C = build_image_cost(img, 0.0, CostKind::maxcut);
  VectorConfig cfg;
  cfg.seed = 2;
  cfg.rho0 = 1.0;
  cfg.max_iter = 500;
  VectorResult r = solve_vector(C, cfg);
  Partition p = sign_round(r.state.x);

  Eigen::VectorXd tone(64);  // connected components of the two-tone image
  for (int row = 0; row < 8; ++row)
    for (int col = 0; col < 8; ++col) tone[row * 8 + col] = col < 4 ? 1.0 : -1.0;
  CHECK(recovery_rate(p, Partition(tone)) == doctest::Approx(1.0));
}

TEST_CASE("brute force: closed cases") {
  BruteForceResult id = brute_force(CostMatrix(Eigen::MatrixXd::Identity(4, 4)));
  CHECK(id.value == doctest::Approx(4.0));  // constant objective

  Eigen::MatrixXd C(2, 2);
  C << 0, 1, 1, 0;
  BruteForceResult r = brute_force(CostMatrix(C));
  CHECK(r.value == doctest::Approx(-2.0));
  CHECK(r.minimizer[0] == 1.0);
  CHECK(r.minimizer[1] == -1.0);

  CHECK_THROWS(brute_force(CostMatrix(Eigen::MatrixXd::Zero(23, 23))));
}

TEST_CASE("brute force agrees with the unreduced enumeration") {
  for (std::uint64_t seed : {71u, 72u, 73u}) {
    const Eigen::MatrixXd M = oracles::random_symmetric(12, seed);
    BruteForceResult r = brute_force(CostMatrix(M));
    const auto [x, v] = oracles::unreduced_brute_force(M);
    CHECK(r.value == doctest::Approx(v).epsilon(1e-9));
    CHECK(oracles::double_sum_objective(M, r.minimizer.values()) ==
          doctest::Approx(v).epsilon(1e-9));
  }
}

TEST_CASE("brute force value lower-bounds every partition") {
  const Graph g = oracles::random_graph(10, 0.5, 17);
  CostMatrix C = build_maxcut_cost(g);
  BruteForceResult r = brute_force(C);
  bqp::Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::VectorXd x(10);
    for (int i = 0; i < 10; ++i) x[i] = rng.bernoulli(0.5) ? 1.0 : -1.0;
    CHECK(objective(C, Partition(x)) >= r.value - 1e-9);
  }
}
