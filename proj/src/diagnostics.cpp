#include "afx/diagnostics.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

#include "afx/problems.hpp"
#include "json.hpp"

namespace afx {
namespace {

constexpr char kMagic[4] = {'A', 'F', 'X', '2'};

void put_u64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffU));
}
void put_u32(std::string& out, std::uint32_t v) {
  for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xffU));
}
void put_f64(std::string& out, double v) { put_u64(out, std::bit_cast<std::uint64_t>(v)); }

class Reader {
 public:
  explicit Reader(std::string data) : data_(std::move(data)) {}
  std::uint64_t u64() { return uint(8); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  double f64() { return std::bit_cast<double>(u64()); }
  void bytes(char* out, std::size_t n) {
    need(n);
    std::memcpy(out, data_.data() + pos_, n);
    pos_ += n;
  }
  [[nodiscard]] bool done() const { return pos_ == data_.size(); }

 private:
  void need(std::size_t n) const {
    if (pos_ + n > data_.size()) throw FormatError("snapshot truncated");
  }
  std::uint64_t uint(int n) {
    need(static_cast<std::size_t>(n));
    std::uint64_t v = 0;
    for (int b = 0; b < n; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + b])) << (8 * b);
    pos_ += static_cast<std::size_t>(n);
    return v;
  }
  std::string data_;
  std::size_t pos_ = 0;
};

struct Family {
  const char* name;
  StateArray DofField::*array;
  long extra_i;
  long extra_j;
};

constexpr std::array<Family, 4> kFamilies{{{"averages", &DofField::averages, 0, 0},
                                           {"nodes", &DofField::nodes, 1, 1},
                                           {"xedges", &DofField::xedges, 1, 0},
                                           {"yedges", &DofField::yedges, 0, 1}}};

std::array<double, 2> location(const GridSpec& s, std::size_t family, long i, long j) {
  switch (family) {
    case 0: return {s.x_center(i), s.y_center(j)};
    case 1: return {s.x_face(i), s.y_face(j)};
    case 2: return {s.x_face(i), s.y_center(j)};
    default: return {s.x_center(i), s.y_face(j)};
  }
}

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool close(double a, double b) { return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace

Snapshot make_snapshot(const DofField& field, const GridSpec& spec, double time, double gamma, bool limiter_on) {
  return {spec, time, gamma, limiter_on, field};
}

void write_snapshot(const std::filesystem::path& path, const Snapshot& s) {
  std::string out;
  out.append(kMagic, 4);
  put_u32(out, kSnapshotVersion);
  put_u64(out, static_cast<std::uint64_t>(s.spec.nx));
  put_u64(out, static_cast<std::uint64_t>(s.spec.ny));
  for (double v : {s.spec.dx, s.spec.dy, s.spec.x0, s.spec.y0, s.time, s.gamma}) put_f64(out, v);
  put_u64(out, s.limiter_on ? 1 : 0);
  for (const auto& fam : kFamilies) {
    const StateArray& a = s.field.*fam.array;
    for (long j = 0; j < s.spec.ny + fam.extra_j; ++j)
      for (long i = 0; i < s.spec.nx + fam.extra_i; ++i)
        for (double v : a(i, j).c) put_f64(out, v);
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw FormatError("cannot write " + path.string());
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw FormatError("write failed: " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
  Reader r(slurp(path));
  char magic[4];
  r.bytes(magic, 4);
  if (std::memcmp(magic, kMagic, 4) != 0) throw FormatError("not a snapshot (bad magic): " + path.string());
  if (const auto v = r.u32(); v != kSnapshotVersion) throw FormatError("unsupported snapshot version " + std::to_string(v));
  Snapshot s;
  const std::uint64_t nx = r.u64();
  const std::uint64_t ny = r.u64();
  if (nx < 3 || ny < 3 || nx > (1U << 24) || ny > (1U << 24)) throw FormatError("implausible snapshot dimensions");
  s.spec.nx = static_cast<long>(nx);
  s.spec.ny = static_cast<long>(ny);
  s.spec.dx = r.f64();
  s.spec.dy = r.f64();
  s.spec.x0 = r.f64();
  s.spec.y0 = r.f64();
  s.time = r.f64();
  s.gamma = r.f64();
  s.limiter_on = r.u64() != 0;
  s.field = allocate(s.spec);
  for (const auto& fam : kFamilies) {
    StateArray& a = s.field.*fam.array;
    for (long j = 0; j < s.spec.ny + fam.extra_j; ++j)
      for (long i = 0; i < s.spec.nx + fam.extra_i; ++i)
        for (double& v : a(i, j).c) v = r.f64();
  }
  if (!r.done()) throw FormatError("trailing bytes after snapshot data");
  return s;
}

void write_snapshot_csv(const std::filesystem::path& dir, const std::string& stem, const Snapshot& s) {
  std::filesystem::create_directories(dir);
  for (std::size_t k = 0; k < kFamilies.size(); ++k) {
    const auto& fam = kFamilies[k];
    const auto path = dir / (stem + "_" + fam.name + ".csv");
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (f == nullptr) throw FormatError("cannot write " + path.string());
    std::fputs("i,j,x,y,rho,rhou,rhov,e\n", f);
    const StateArray& a = s.field.*fam.array;
    for (long j = 0; j < s.spec.ny + fam.extra_j; ++j) {
      for (long i = 0; i < s.spec.nx + fam.extra_i; ++i) {
        const auto [x, y] = location(s.spec, k, i, j);
        const auto& q = a(i, j);
        std::fprintf(f, "%ld,%ld,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", i, j, x, y, q[0], q[1], q[2], q[3]);
      }
    }
    std::fclose(f);
  }
  const auto meta = dir / (stem + "_meta.txt");
  std::FILE* f = std::fopen(meta.string().c_str(), "w");
  if (f == nullptr) throw FormatError("cannot write " + meta.string());
  std::fprintf(f, "nx=%ld\nny=%ld\ndx=%.17g\ndy=%.17g\nx0=%.17g\ny0=%.17g\ntime=%.17g\ngamma=%.17g\nlimiter=%d\n",
               s.spec.nx, s.spec.ny, s.spec.dx, s.spec.dy, s.spec.x0, s.spec.y0, s.time, s.gamma,
               s.limiter_on ? 1 : 0);
  std::fclose(f);
}

Snapshot read_snapshot_csv(const std::filesystem::path& dir, const std::string& stem) {
  std::map<std::string, std::string> meta;
  {
    std::istringstream in(slurp(dir / (stem + "_meta.txt")));
    std::string line;
    while (std::getline(in, line)) {
      const auto eq = line.find('=');
      if (eq == std::string::npos) continue;
      meta[line.substr(0, eq)] = line.substr(eq + 1);
    }
  }
  auto get = [&](const char* key) {
    const auto it = meta.find(key);
    if (it == meta.end()) throw FormatError(std::string("snapshot meta lacks ") + key);
    return it->second;
  };
  Snapshot s;
  try {
    s.spec.nx = std::stol(get("nx"));
    s.spec.ny = std::stol(get("ny"));
    s.spec.dx = std::stod(get("dx"));
    s.spec.dy = std::stod(get("dy"));
    s.spec.x0 = std::stod(get("x0"));
    s.spec.y0 = std::stod(get("y0"));
    s.time = std::stod(get("time"));
    s.gamma = std::stod(get("gamma"));
    s.limiter_on = std::stoi(get("limiter")) != 0;
  } catch (const std::logic_error&) {
    throw FormatError("malformed snapshot meta in " + dir.string());
  }
  s.field = allocate(s.spec);
  for (const auto& fam : kFamilies) {
    const auto path = dir / (stem + "_" + fam.name + ".csv");
    std::istringstream in(slurp(path));
    std::string line;
    std::getline(in, line);
    if (line != "i,j,x,y,rho,rhou,rhov,e") throw FormatError("bad CSV header in " + path.string());
    StateArray& a = s.field.*fam.array;
    long rows = 0;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      long i = 0, j = 0;
      double x = 0, y = 0;
      ConservedState q{};
      if (std::sscanf(line.c_str(), "%ld,%ld,%lf,%lf,%lf,%lf,%lf,%lf", &i, &j, &x, &y, &q.c[0], &q.c[1], &q.c[2],
                      &q.c[3]) != 8 ||
          i < 0 || j < 0 || i >= s.spec.nx + fam.extra_i || j >= s.spec.ny + fam.extra_j) {
        throw FormatError("bad CSV row in " + path.string() + ": " + line);
      }
      a(i, j) = q;
      ++rows;
    }
    if (rows != (s.spec.nx + fam.extra_i) * (s.spec.ny + fam.extra_j)) throw FormatError("row count mismatch in " + path.string());
  }
  return s;
}

std::array<double, 4> l1_point_error(const Snapshot& c, const Snapshot& f) {
  const GridSpec& a = c.spec;
  const GridSpec& b = f.spec;
  if (f.spec.nx % a.nx != 0 || b.ny % a.ny != 0) throw UsageError("reference grid is not a refinement of the coarse grid");
  const long k = b.nx / a.nx;
  if (b.ny / a.ny != k || !std::has_single_bit(static_cast<unsigned long>(k))) {
    throw UsageError("reference must refine both axes by the same power of two");
  }
  if (!close(a.x0, b.x0) || !close(a.y0, b.y0) || !close(a.dx, k * b.dx) || !close(a.dy, k * b.dy)) {
    throw UsageError("coarse and reference grids cover different domains");
  }
  const long h = k / 2;  // fine offset of a coarse half-cell
  // A coarse midpoint is a fine node when k is even, a fine midpoint when k == 1.
  auto fine_xedge = [&](long I, long j) -> const ConservedState& {
    return k == 1 ? f.field.xedges(I, j) : f.field.nodes(k * I, k * j + h);
  };
  auto fine_yedge = [&](long i, long J) -> const ConservedState& {
    return k == 1 ? f.field.yedges(i, J) : f.field.nodes(k * i + h, k * J);
  };
  std::array<double, 4> sum{};
  auto add = [&sum](const ConservedState& p, const ConservedState& q) {
    for (std::size_t m = 0; m < 4; ++m) sum[m] += std::abs(p[m] - q[m]);
  };
  for (long J = 0; J <= a.ny; ++J)
    for (long I = 0; I <= a.nx; ++I) add(c.field.nodes(I, J), f.field.nodes(k * I, k * J));
  for (long j = 0; j < a.ny; ++j)
    for (long I = 0; I <= a.nx; ++I) add(c.field.xedges(I, j), fine_xedge(I, j));
  for (long J = 0; J <= a.ny; ++J)
    for (long i = 0; i < a.nx; ++i) add(c.field.yedges(i, J), fine_yedge(i, J));
  for (double& v : sum) v *= a.dx * a.dy;
  return sum;
}

void compute_orders(ErrorReport& r) {
  r.orders.clear();
  for (std::size_t l = 0; l + 1 < r.l1.size(); ++l) {
    std::array<double, 4> o{};
    const double ratio = static_cast<double>(r.grid_sizes[l + 1]) / static_cast<double>(r.grid_sizes[l]);
    for (std::size_t m = 0; m < 4; ++m) o[m] = std::log(r.l1[l][m] / r.l1[l + 1][m]) / std::log(ratio);
    r.orders.push_back(o);
  }
}

std::string report_json(const ErrorReport& r) {
  nlohmann::json j;
  j["grid_sizes"] = r.grid_sizes;
  j["components"] = {"rho", "rhou", "rhov", "e"};
  j["l1"] = r.l1;
  j["orders"] = r.orders;
  return j.dump(2);
}

ConvergenceResult convergence_study(const ProblemConfig& problem, std::vector<long> grids, const RunParams& params,
                                    std::ostream* progress) {
  if (grids.size() < 3) throw UsageError("convergence needs at least two grids plus a reference");
  std::sort(grids.begin(), grids.end());
  ConvergenceResult out;
  std::vector<Snapshot> snaps;
  for (long n : grids) {
    const GridSpec spec = make_grid(problem, n, n);
    DofField field;
    out.runs.push_back(run(problem, spec, params, {}, field, progress));
    snaps.push_back(make_snapshot(field, spec, out.runs.back().time, problem.gas.gamma, params.limiter_on));
  }
  for (std::size_t l = 0; l + 1 < snaps.size(); ++l) {
    out.report.grid_sizes.push_back(grids[l]);
    out.report.l1.push_back(l1_point_error(snaps[l], snaps.back()));
  }
  compute_orders(out.report);
  return out;
}

std::vector<std::pair<double, double>> radial_scatter(const Snapshot& s, double cx, double cy) {
  std::vector<std::pair<double, double>> out;
  out.reserve(static_cast<std::size_t>(s.spec.nx * s.spec.ny));
  for (long j = 0; j < s.spec.ny; ++j)
    for (long i = 0; i < s.spec.nx; ++i)
      out.emplace_back(std::hypot(s.spec.x_center(i) - cx, s.spec.y_center(j) - cy), s.field.averages(i, j).rho());
  return out;
}

LineCut line_cut(const Snapshot& s, Axis fixed, double at) {
  const GridSpec& g = s.spec;
  const bool vertical = fixed == Axis::X;
  const double origin = vertical ? g.x0 : g.y0;
  const double h = vertical ? g.dx : g.dy;
  const long n = vertical ? g.nx : g.ny;
  const long m = vertical ? g.ny : g.nx;
  // Half-index 2I is a face column, 2i + 1 a center column.
  const long half = std::clamp(std::lround((at - origin) / (0.5 * h)), 0L, 2 * n);
  LineCut cut;
  cut.fixed = fixed;
  cut.coordinate = origin + 0.5 * h * static_cast<double>(half);
  auto along = [&](long kk, bool center) {
    const double t0 = vertical ? g.y0 : g.x0;
    const double ht = vertical ? g.dy : g.dx;
    return t0 + ht * (static_cast<double>(kk) + (center ? 0.5 : 0.0));
  };
  if (half % 2 == 0) {
    const long I = half / 2;
    for (long t = 0; t <= m; ++t) {
      cut.samples.emplace_back(along(t, false), vertical ? s.field.nodes(I, t) : s.field.nodes(t, I));
      if (t < m) cut.samples.emplace_back(along(t, true), vertical ? s.field.xedges(I, t) : s.field.yedges(t, I));
    }
  } else {
    const long i = half / 2;
    for (long t = 0; t <= m; ++t) {
      cut.samples.emplace_back(along(t, false), vertical ? s.field.yedges(i, t) : s.field.xedges(t, i));
    }
  }
  return cut;
}

}  // namespace afx
