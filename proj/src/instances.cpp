#include "bqp/instances.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bqp/rng.hpp"

namespace bqp {

namespace {

std::invalid_argument line_error(std::size_t line_no, const std::string& what) {
  std::ostringstream os;
  os << "rudy parse: line " << line_no << ": " << what;
  return std::invalid_argument(os.str());
}

}  // namespace

SBMSample sbm_generate(const SBMSpec& spec) {
  if (spec.n <= 0) throw std::invalid_argument("sbm: n must be positive");
  if (spec.m < 1 || 2 * spec.m > spec.n)
    throw std::invalid_argument("sbm: need 1 <= m <= n/2");
  if (!(0.0 < spec.q && spec.q < spec.p && spec.p < 1.0))
    throw std::invalid_argument("sbm: need 0 < q < p < 1");

  Rng rng(spec.seed);
  std::vector<Edge> edges;
  for (int i = 1; i <= spec.n; ++i) {
    const bool i_first = i <= spec.m;
    for (int j = i + 1; j <= spec.n; ++j) {
      const bool same = i_first == (j <= spec.m);
      if (rng.bernoulli(same ? spec.p : spec.q)) edges.push_back({i, j, 1.0});
    }
  }
  Eigen::VectorXd truth(spec.n);
  for (int i = 0; i < spec.n; ++i) truth[i] = i < spec.m ? 1.0 : -1.0;
  return SBMSample{Graph(spec.n, std::move(edges)), Partition(std::move(truth))};
}

Graph parse_rudy(std::string_view text, bool allow_nonpositive) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  long long n = 0, m = 0;
  bool have_header = false;
  std::vector<Edge> edges;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    if (!have_header) {
      if (!(ls >> n >> m)) {
        if (line.find_first_not_of(" \t") == std::string::npos) continue;  // blank
        throw line_error(line_no, "expected header \"n m_edges\"");
      }
      std::string extra;
      if (ls >> extra) throw line_error(line_no, "trailing tokens after header");
      if (n <= 0) throw line_error(line_no, "node count must be positive");
      if (m < 0) throw line_error(line_no, "edge count must be nonnegative");
      have_header = true;
      continue;
    }
    long long i = 0, j = 0;
    double w = 0.0;
    if (!(ls >> i >> j >> w)) {
      if (line.find_first_not_of(" \t") == std::string::npos) continue;
      throw line_error(line_no, "expected \"i j w\"");
    }
    std::string extra;
    if (ls >> extra) throw line_error(line_no, "trailing tokens after edge");
    if (i < 1 || i > n || j < 1 || j > n) {
      std::ostringstream os;
      os << "node index out of range 1.." << n;
      throw line_error(line_no, os.str());
    }
    if (i == j) throw line_error(line_no, "self-loop");
    if (!allow_nonpositive && !(w > 0.0))
      throw line_error(line_no, "nonpositive weight (enable signed weights to accept)");
    edges.push_back({static_cast<int>(i), static_cast<int>(j), w});
  }
  if (!have_header) throw std::invalid_argument("rudy parse: empty input");
  if (static_cast<long long>(edges.size()) != m) {
    std::ostringstream os;
    os << "rudy parse: header declares " << m << " edges but " << edges.size()
       << " were found";
    throw std::invalid_argument(os.str());
  }
  return Graph(static_cast<int>(n), std::move(edges), allow_nonpositive);
}

std::string serialize_rudy(const Graph& g) {
  std::ostringstream os;
  os.precision(17);
  os << g.node_count() << " " << g.edges().size() << "\n";
  for (const Edge& e : g.edges()) os << e.u << " " << e.v << " " << e.w << "\n";
  return os.str();
}

Eigen::MatrixXd ImageFeatures::features() const {
  Eigen::MatrixXd f(n_pixels(), 5);
  f << colors, c * coords;
  return f;
}

namespace {

// Token scanner for PNM headers: skips whitespace and '#' comments.
class PnmScanner {
 public:
  explicit PnmScanner(std::string_view bytes) : bytes_(bytes) {}

  std::string next_token() {
    skip_space_and_comments();
    if (pos_ >= bytes_.size())
      throw std::invalid_argument("pnm parse: truncated header");
    std::size_t start = pos_;
    while (pos_ < bytes_.size() && !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
      ++pos_;
    return std::string(bytes_.substr(start, pos_ - start));
  }

  long next_int(const char* what) {
    const std::string tok = next_token();
    try {
      std::size_t used = 0;
      const long v = std::stol(tok, &used);
      if (used != tok.size()) throw std::invalid_argument(tok);
      return v;
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("pnm parse: bad ") + what + " \"" + tok + "\"");
    }
  }

  // Position just past the single whitespace byte that terminates the header
  // of a raw (P5/P6) file.
  std::size_t raw_payload_start() {
    if (pos_ >= bytes_.size() ||
        !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
      throw std::invalid_argument("pnm parse: missing separator before raw payload");
    return pos_ + 1;
  }

 private:
  void skip_space_and_comments() {
    while (pos_ < bytes_.size()) {
      const char ch = bytes_[pos_];
      if (std::isspace(static_cast<unsigned char>(ch))) {
        ++pos_;
      } else if (ch == '#') {
        while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  std::string_view bytes_;
  std::size_t pos_ = 0;
};

}  // namespace

ImageFeatures parse_pnm(std::string_view bytes, double c, Eigen::Index pixel_cap) {
  PnmScanner scan(bytes);
  const std::string magic = scan.next_token();
  const bool color = magic == "P3" || magic == "P6";
  const bool raw = magic == "P5" || magic == "P6";
  if (magic != "P2" && magic != "P3" && magic != "P5" && magic != "P6")
    throw std::invalid_argument("pnm parse: unsupported magic \"" + magic +
                                "\" (need P2/P3/P5/P6)");
  const long width = scan.next_int("width");
  const long height = scan.next_int("height");
  const long maxval = scan.next_int("maxval");
  if (width <= 0 || height <= 0)
    throw std::invalid_argument("pnm parse: dimensions must be positive");
  if (maxval < 1 || maxval > 65535)
    throw std::invalid_argument("pnm parse: maxval out of range 1..65535");
  const Eigen::Index n = static_cast<Eigen::Index>(width) * height;
  if (n > pixel_cap) {
    std::ostringstream os;
    os << "pnm parse: " << n << " pixels exceeds cap " << pixel_cap;
    throw std::invalid_argument(os.str());
  }

  const std::size_t channels = color ? 3 : 1;
  const std::size_t samples = static_cast<std::size_t>(n) * channels;
  std::vector<double> values(samples);

  if (raw) {
    const std::size_t start = scan.raw_payload_start();
    const std::size_t bytes_per = maxval > 255 ? 2 : 1;
    if (bytes.size() - start < samples * bytes_per)
      throw std::invalid_argument("pnm parse: truncated payload");
    for (std::size_t s = 0; s < samples; ++s) {
      const auto* p =
          reinterpret_cast<const unsigned char*>(bytes.data() + start + s * bytes_per);
      const long v = bytes_per == 2 ? (static_cast<long>(p[0]) << 8) | p[1] : p[0];
      if (v > maxval)
        throw std::invalid_argument("pnm parse: sample exceeds maxval");
      values[s] = static_cast<double>(v) / static_cast<double>(maxval);
    }
  } else {
    for (std::size_t s = 0; s < samples; ++s) {
      long v = 0;
      try {
        v = scan.next_int("sample");
      } catch (const std::invalid_argument& e) {
        if (std::string(e.what()).find("truncated") != std::string::npos)
          throw std::invalid_argument("pnm parse: truncated payload");
        throw;
      }
      if (v < 0 || v > maxval)
        throw std::invalid_argument("pnm parse: sample out of range");
      values[s] = static_cast<double>(v) / static_cast<double>(maxval);
    }
  }

  ImageFeatures img;
  img.width = static_cast<int>(width);
  img.height = static_cast<int>(height);
  img.c = c;
  img.colors.resize(n, 3);
  img.coords.resize(n, 2);
  for (long row = 0; row < height; ++row)
    for (long col = 0; col < width; ++col) {
      const Eigen::Index idx = row * width + col;
      if (color) {
        for (int ch = 0; ch < 3; ++ch)
          img.colors(idx, ch) = values[(static_cast<std::size_t>(idx)) * 3 + ch];
      } else {
        img.colors.row(idx).setConstant(values[static_cast<std::size_t>(idx)]);
      }
      img.coords(idx, 0) =
          width > 1 ? static_cast<double>(col) / static_cast<double>(width - 1) : 0.0;
      img.coords(idx, 1) =
          height > 1 ? static_cast<double>(row) / static_cast<double>(height - 1) : 0.0;
    }
  return img;
}

ImageFeatures load_image(const std::string& path, double c, Eigen::Index pixel_cap) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("load_image: cannot open \"" + path + "\"");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pnm(buf.str(), c, pixel_cap);
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string(e.what()) + " in \"" + path + "\"");
  }
}

BruteForceResult brute_force(const CostMatrix& Cm) {
  const Eigen::Index n = Cm.size();
  if (n > 22) {
    std::ostringstream os;
    os << "brute force: n = " << n << " exceeds the hard cap 22";
    throw std::invalid_argument(os.str());
  }
  const Eigen::MatrixXd& C = Cm.matrix();

  // Gray-code walk over coordinates 2..n with x_1 = +1 fixed; one coordinate
  // flips per step, so the gradient vector g = Cx updates in O(n).
  Eigen::VectorXd x = Eigen::VectorXd::Ones(n);
  Eigen::VectorXd g = C * x;
  double val = x.dot(g);

  Eigen::VectorXd best_x = x;
  double best_val = val;
  const auto lex_smaller = [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      if (a[i] != b[i]) return a[i] < b[i];
    }
    return false;
  };

  const std::uint64_t steps = n >= 1 ? (1ull << (n - 1)) : 1;
  for (std::uint64_t s = 1; s < steps; ++s) {
    const int j = 1 + __builtin_ctzll(s);
    const double xj = x[j];
    val += -4.0 * xj * g[j] + 4.0 * C(j, j);
    g -= (2.0 * xj) * C.col(j);
    x[j] = -xj;
    if (val < best_val || (val == best_val && lex_smaller(x, best_x))) {
      best_val = val;
      best_x = x;
    }
  }
  // Re-evaluate directly so the returned value is free of incremental drift.
  BruteForceResult out{Partition(best_x), 0.0};
  out.value = best_x.dot(C * best_x);
  return out;
}

Graph generate_torus3(int side, TorusWeights kind, std::uint64_t seed, double scale) {
  if (side < 3)
    throw std::invalid_argument("torus: side must be >= 3 (shorter sides collapse pairs)");
  Rng rng(seed);
  const int L = side;
  const auto id = [L](int x, int y, int z) { return 1 + x + L * (y + L * z); };
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(3) * L * L * L);
  for (int z = 0; z < L; ++z)
    for (int y = 0; y < L; ++y)
      for (int x = 0; x < L; ++x) {
        const int u = id(x, y, z);
        const int nbr[3] = {id((x + 1) % L, y, z), id(x, (y + 1) % L, z),
                            id(x, y, (z + 1) % L)};
        for (int v : nbr) {
          double w = 0.0;
          if (kind == TorusWeights::pm_one) {
            w = rng.bernoulli(0.5) ? 1.0 : -1.0;
          } else {
            do {
              w = std::round(scale * rng.normal());
            } while (w == 0.0);
          }
          edges.push_back({std::min(u, v), std::max(u, v), w});
        }
      }
  return Graph(L * L * L, std::move(edges), /*allow_nonpositive=*/true);
}

}  // namespace bqp
