#include "willmore/io.hpp"

#include <atomic>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

#include "json.hpp"
#include "willmore/verify.hpp"

namespace willmore {

namespace {

using nlohmann::json;
using PathElem = std::variant<std::string, int>;
using Path = std::vector<PathElem>;

std::pair<int, int> line_col(const std::string& text, std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

// Source offset of the value at a path in a document already known to be valid JSON.
class Locator {
 public:
  explicit Locator(const std::string& t) : t_(t) {}

  std::size_t find(const Path& path) {
    std::size_t i = ws(0);
    for (const PathElem& e : path) {
      if (const auto* key = std::get_if<std::string>(&e)) {
        if (t_[i] != '{') return i;
        i = ws(i + 1);
        bool found = false;
        while (t_[i] == '"') {
          const std::size_t k0 = i + 1;
          i = skip_string(i);
          const std::string k = t_.substr(k0, i - 1 - k0);
          i = ws(ws(i) + 1);  // past ':'
          if (k == *key) {
            found = true;
            break;
          }
          i = ws(skip(i));
          if (t_[i] == ',') i = ws(i + 1);
        }
        if (!found) return i;
      } else {
        if (t_[i] != '[') return i;
        i = ws(i + 1);
        for (int n = std::get<int>(e); n > 0 && t_[i] != ']'; --n) {
          i = ws(skip(i));
          if (t_[i] == ',') i = ws(i + 1);
        }
      }
    }
    return i;
  }

 private:
  std::size_t ws(std::size_t i) const {
    while (i < t_.size() && std::isspace(static_cast<unsigned char>(t_[i]))) ++i;
    return i;
  }
  std::size_t skip_string(std::size_t i) const {
    for (++i; i < t_.size() && t_[i] != '"'; ++i)
      if (t_[i] == '\\') ++i;
    return i + 1;
  }
  std::size_t skip(std::size_t i) const {
    if (t_[i] == '"') return skip_string(i);
    if (t_[i] == '{' || t_[i] == '[') {
      int depth = 0;
      for (; i < t_.size(); ++i) {
        if (t_[i] == '"') {
          i = skip_string(i) - 1;
        } else if (t_[i] == '{' || t_[i] == '[') {
          ++depth;
        } else if (t_[i] == '}' || t_[i] == ']') {
          if (--depth == 0) return i + 1;
        }
      }
      return i;
    }
    while (i < t_.size() && t_[i] != ',' && t_[i] != '}' && t_[i] != ']' &&
           !std::isspace(static_cast<unsigned char>(t_[i])))
      ++i;
    return i;
  }
  const std::string& t_;
};

class PotentialReader {
 public:
  explicit PotentialReader(const std::string& text) : text_(text) {}

  NormalizedPotential read() {
    json j;
    try {
      j = json::parse(text_);
    } catch (const json::parse_error& e) {
      const auto [l, c] = line_col(text_, e.byte > 0 ? e.byte - 1 : 0);
      throw ParseError("malformed JSON", l, c);
    }
    if (!j.is_object()) fail({}, "potential file must hold a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it) {
      static const char* known[] = {"m", "h", "hhat", "h_partner", "hhat_partner"};
      if (std::none_of(std::begin(known), std::end(known), [&](const char* k) { return it.key() == k; }))
        fail({it.key()}, "unknown key '" + it.key() + "'");
    }
    if (!j.contains("m")) fail({}, "missing key 'm'");
    if (!j["m"].is_number_integer() || j["m"].get<long>() < 1) fail({"m"}, "'m' must be a positive integer");
    const int m = j["m"].get<int>();
    NormalizedPotential p;
    p.m = m;
    p.h = polys(j, "h", m);
    p.hhat = polys(j, "hhat", m);
    if (j.contains("h_partner")) p.h_partner = polys(j, "h_partner", m);
    if (j.contains("hhat_partner")) p.hhat_partner = polys(j, "hhat_partner", m);
    return p;
  }

 private:
  [[noreturn]] void fail(const Path& path, const std::string& msg) {
    const auto [l, c] = line_col(text_, Locator(text_).find(path));
    throw ParseError(msg, l, c);
  }

  std::string part(const json& x, const Path& path) {
    if (x.is_string()) return x.get<std::string>();
    if (x.is_number_integer()) return x.dump();
    fail(path, "coefficient parts must be strings \"p/q\" or integers");
  }

  std::vector<BiPoly> polys(const json& j, const std::string& key, int m) {
    if (!j.contains(key)) fail({}, "missing key '" + key + "'");
    const json& a = j[key];
    if (!a.is_array() || static_cast<int>(a.size()) != m)
      fail({key}, "'" + key + "' must be a list of " + std::to_string(m) + " polynomials");
    std::vector<BiPoly> out;
    for (int k = 0; k < m; ++k) {
      const json& poly = a[k];
      if (!poly.is_array()) fail({key, k}, "a polynomial is a list of [re, im] coefficients");
      std::vector<GaussianRational> cs;
      for (int d = 0; d < static_cast<int>(poly.size()); ++d) {
        const json& c = poly[d];
        if (!c.is_array() || c.size() != 2) fail({key, k, d}, "a coefficient is a pair [re, im]");
        const std::string re = part(c[0], {key, k, d, 0}), im = part(c[1], {key, k, d, 1});
        try {
          cs.push_back(GaussianRational::parse(re));
        } catch (const std::exception&) {
          fail({key, k, d, 0}, "bad rational '" + re + "'");
        }
        try {
          cs.back() += GaussianRational::parse(im) * GaussianRational::i();
        } catch (const std::exception&) {
          fail({key, k, d, 1}, "bad rational '" + im + "'");
        }
      }
      out.push_back(BiPoly::in_z(cs));
    }
    return out;
  }

  const std::string& text_;
};

std::string poly_json(const BiPoly& p) {
  std::string s = "[";
  const int deg = p.is_zero() ? -1 : p.deg_z();
  for (int d = 0; d <= deg; ++d) {
    const GaussianRational c = p.coeff(d, 0);
    if (d > 0) s += ", ";
    s += "[\"" + c.re().get_str() + "\", \"" + c.im().get_str() + "\"]";
  }
  return s + "]";
}

std::string list_json(const std::vector<BiPoly>& v) {
  std::string s = "[\n";
  for (std::size_t k = 0; k < v.size(); ++k) s += "    " + poly_json(v[k]) + (k + 1 < v.size() ? ",\n" : "\n");
  return s + "  ]";
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <class F>
void parallel_for(std::size_t n, F f) {
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k; (k = next++) < n;) f(k);
  };
  const int nt = std::min<int>(worker_threads(), std::max<std::size_t>(1, n));
  std::vector<std::thread> pool;
  for (int t = 1; t < nt; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
}

}  // namespace

NormalizedPotential parse_potential(const std::string& text) { return PotentialReader(text).read(); }

NormalizedPotential load_potential(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return parse_potential(os.str());
}

std::string potential_to_json(const NormalizedPotential& p) {
  std::string s = "{\n  \"m\": " + std::to_string(p.m) + ",\n";
  s += "  \"h\": " + list_json(p.h) + ",\n";
  s += "  \"hhat\": " + list_json(p.hhat);
  if (p.h_partner) s += ",\n  \"h_partner\": " + list_json(*p.h_partner);
  if (p.hhat_partner) s += ",\n  \"hhat_partner\": " + list_json(*p.hhat_partner);
  return s + "\n}\n";
}

double parse_real(const std::string& s) {
  try {
    return GaussianRational::parse(s).to_complex().real();
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'", 1, 1);
  }
}

int parse_positive_int(const std::string& s) {
  const GaussianRational x = [&] {
    try {
      return GaussianRational::parse(s);
    } catch (const std::exception&) {
      throw ParseError("bad integer '" + s + "'", 1, 1);
    }
  }();
  if (x.re().get_den() != 1 || x.re() < 1 || x.re() > 1000000) throw ParseError("expected a positive integer, got '" + s + "'", 1, 1);
  return static_cast<int>(x.re().get_num().get_si());
}

LambdaSpec parse_lambda(const std::string& raw) {
  std::string s;
  for (char ch : raw)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  LambdaSpec out;
  auto bad = [&](const std::string& why) { return ParseError("bad lambda '" + raw + "': " + why, 1, 1); };
  if (s.empty()) throw bad("empty");
  if (s == "i" || s == "+i" || s == "-i") {
    out.exact = GaussianRational(0, s == "-i" ? -1 : 1);
  } else if (s[0] == '@') {
    const GaussianRational t = [&] {
      try {
        return GaussianRational::parse(s.substr(1));
      } catch (const std::exception&) {
        throw bad("expected @t with t a number of turns");
      }
    }();
    // quarter turns are exact
    const mpq_class q = t.re() * 4;
    if (q.get_den() == 1) {
      static const GaussianRational unit[] = {1, GaussianRational(0, 1), -1, GaussianRational(0, -1)};
      mpz_class k = q.get_num() % 4;
      if (k < 0) k += 4;
      out.exact = unit[k.get_si()];
    } else {
      out.value = std::polar(1.0, 2 * M_PI * t.to_complex().real());
    }
  } else {
    const auto comma = s.find(',');
    try {
      out.exact = comma == std::string::npos ? GaussianRational::parse(s)
                                             : GaussianRational::parse(s.substr(0, comma), s.substr(comma + 1));
    } catch (const std::exception&) {
      throw bad("expected re,im");
    }
  }
  if (out.exact) {
    out.value = out.exact->to_complex();
    if (out.exact->norm2() != 1) {
      out.exact.reset();
      if (std::abs(std::abs(out.value) - 1.0) > 1e-12) throw bad("|lambda| must be 1");
    }
  }
  return out;
}

Grid make_grid(const GridSpec& spec) {
  if (spec.n < 2) throw Error("grid needs n >= 2");
  if (!(spec.radius > 0)) throw Error("grid radius must be positive");
  Grid g;
  const int n = spec.n;
  if (spec.kind == GridKind::Polar) {
    g.points.push_back(0.0);
    for (int k = 1; k <= n; ++k)
      for (int j = 0; j < n; ++j) g.points.push_back(std::polar(spec.radius * k / n, 2 * M_PI * j / n));
    auto at = [n](int k, int j) { return 1 + (k - 1) * n + (j % n); };
    for (int j = 0; j < n; ++j) g.triangles.push_back({0, at(1, j), at(1, j + 1)});
    for (int k = 1; k < n; ++k)
      for (int j = 0; j < n; ++j) {
        g.triangles.push_back({at(k, j), at(k + 1, j), at(k + 1, j + 1)});
        g.triangles.push_back({at(k, j), at(k + 1, j + 1), at(k, j + 1)});
      }
  } else {
    std::vector<int> index(static_cast<std::size_t>(n) * n, -1);
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        const cplx z(-spec.radius + 2 * spec.radius * b / (n - 1), -spec.radius + 2 * spec.radius * a / (n - 1));
        if (std::abs(z) <= spec.radius * (1 + 1e-12)) {
          index[a * n + b] = static_cast<int>(g.points.size());
          g.points.push_back(z);
        }
      }
    for (int a = 0; a + 1 < n; ++a)
      for (int b = 0; b + 1 < n; ++b) {
        const int p = index[a * n + b], q = index[a * n + b + 1], r = index[(a + 1) * n + b + 1],
                  s = index[(a + 1) * n + b];
        if (p < 0 || q < 0 || r < 0 || s < 0) continue;
        g.triangles.push_back({p, q, r});
        g.triangles.push_back({p, r, s});
      }
  }
  return g;
}

Mesh build_mesh(const HolomorphicFrame& hf, const GridSpec& spec, cplx lambda) {
  Mesh mesh;
  mesh.m = hf.m;
  mesh.lambda = lambda;
  mesh.grid = make_grid(spec);
  const GroupContext g(hf.m);
  const int N = 2 * hf.m + 2;
  const double nan = std::nan("");
  mesh.vertices.resize(mesh.grid.points.size());
  parallel_for(mesh.vertices.size(), [&](std::size_t k) {
    MeshVertex& v = mesh.vertices[k];
    v.z = mesh.grid.points[k];
    try {
      const PairValue p = extract_pair(extended_frame(g, hf, v.z), lambda);
      v.Y = p.Y.real();
      v.Yhat = p.Yhat.real();
      v.y = project_to_sphere(p.Y);
      v.yhat = project_to_sphere(p.Yhat);
      v.metric_y = induced_metric(hf, v.z, lambda, Which::Y);
      v.metric_yhat = induced_metric(hf, v.z, lambda, Which::Yhat);
    } catch (const SingularLocus&) {
      v.singular = true;
    } catch (const DenominatorVanishes&) {
      v.singular = true;
    } catch (const FirstCoordinateVanishes&) {
      v.singular = true;
    }
    if (v.singular) {
      v.Y = v.Yhat = Eigen::VectorXd::Constant(N, nan);
      v.y = v.yhat = Eigen::VectorXd::Constant(N - 1, nan);
      v.metric_y = v.metric_yhat = nan;
    }
  });
  return mesh;
}

std::string mesh_csv(const Mesh& mesh) {
  const int N = 2 * mesh.m + 2;
  std::string s = "re_z,im_z";
  for (int i = 0; i < N; ++i) s += ",Y" + std::to_string(i);
  for (int i = 0; i < N; ++i) s += ",Yh" + std::to_string(i);
  for (int i = 1; i < N; ++i) s += ",y" + std::to_string(i);
  for (int i = 1; i < N; ++i) s += ",yh" + std::to_string(i);
  s += ",metric_y,metric_yh,singular\n";
  for (const MeshVertex& v : mesh.vertices) {
    s += num(v.z.real()) + "," + num(v.z.imag());
    for (const Eigen::VectorXd* x : {&v.Y, &v.Yhat, &v.y, &v.yhat})
      for (Eigen::Index i = 0; i < x->size(); ++i) s += "," + num((*x)(i));
    s += "," + num(v.metric_y) + "," + num(v.metric_yhat) + "," + (v.singular ? "1" : "0") + "\n";
  }
  return s;
}

std::string mesh_obj(const Mesh& mesh) {
  if (mesh.m != 2) throw Error("OBJ export needs m = 2 (surfaces in S^4)");
  std::string s =
      "# lossy visualization: stereographic projection of S^4 from (0,0,0,0,1) to R^4, last coordinate dropped\n";
  const std::size_t n = mesh.vertices.size();
  for (int which = 0; which < 2; ++which) {
    s += which == 0 ? "o y\n" : "o yhat\n";
    std::vector<bool> ok(n);
    for (std::size_t k = 0; k < n; ++k) {
      const MeshVertex& v = mesh.vertices[k];
      const Eigen::VectorXd& y = which == 0 ? v.y : v.yhat;
      const double d = 1.0 - y(4);
      ok[k] = !v.singular && d > 1e-9;
      if (ok[k])
        s += "v " + num(y(0) / d) + " " + num(y(1) / d) + " " + num(y(2) / d) + "\n";
      else
        s += "v 0 0 0\n";
    }
    const std::size_t base = which * n + 1;
    for (const auto& t : mesh.grid.triangles) {
      if (!ok[t[0]] || !ok[t[1]] || !ok[t[2]]) continue;
      s += "f " + std::to_string(base + t[0]) + " " + std::to_string(base + t[1]) + " " + std::to_string(base + t[2]) +
           "\n";
    }
  }
  return s;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path);
  out << content;
  if (!out) throw Error("write failed for " + path);
}

}  // namespace willmore
