#include "ntri/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <thread>

#include "ntri/constructor.hpp"
#include "ntri/decomposition.hpp"
#include "ntri/generators.hpp"
#include "ntri/mop_solver.hpp"
#include "ntri/oracle.hpp"

namespace ntri::cli {

using nlohmann::json;

int oracle_cap() {
  if (const char* env = std::getenv("NT_ORACLE_MAX")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 64) return static_cast<int>(v);
  }
  return 25;
}

namespace {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

// Bound recorded in certificates: the exceptions carry one extra vertex.
int certificate_bound(const NearTriangulation& t) { return budget(t.order()) + (is_exception(t) ? 1 : 0); }

// Runs a command body, mapping exceptions to exit codes.
template <class F>
int guarded(std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const ExceptionInputError& e) {
    err << "exception input: " << e.what() << "\n";
    return kExceptionInput;
  } catch (const LedgerError& e) {
    err << "ledger breach: " << e.what() << "\n";
    return kInternal;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kValidation;
  } catch (const json::exception& e) {
    err << "error: malformed JSON: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}

// Loading maps invariant violations to validation failures.
NearTriangulation load(const std::string& path) {
  const std::string text = read_file(path);
  try {
    return parse_ntg(text);
  } catch (const InvariantError& e) {
    throw PreconditionError(path + ": " + e.what());
  }
}

void emit(std::ostream& out, const json& j, bool pretty) {
  out << (pretty ? j.dump(2) : j.dump()) << "\n";
}

std::string file_name(const GenArgs& a, int index, std::uint64_t seed) {
  const std::string& f = a.family;
  if (f == "exceptions") return index == 0 ? "h1.ntg" : "h2.ntg";
  if (f == "h7") return "h7.ntg";
  if (f == "tight_mop" || f == "octahedra") return f + "_k" + std::to_string(a.k) + ".ntg";
  if (f == "fan" || f == "wheel") return f + "_n" + std::to_string(a.n) + ".ntg";
  return f + "_n" + std::to_string(a.n) + "_s" + std::to_string(seed) + ".ntg";
}

struct Instance {
  std::string family;
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  bool seeded = false;
  int interior = -1;
  const NearTriangulation* fixed = nullptr;
};

NearTriangulation build(const Instance& in) {
  if (in.fixed) return *in.fixed;
  if (in.family == "random_neartri") {
    int m = in.interior;
    if (m < 0) {
      std::mt19937_64 rng(in.seed ^ 0x9e3779b97f4a7c15ULL);
      m = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(in.n - 3)));
    }
    return gen_random_neartri(in.n, std::min(m, in.n - 4), in.seed);
  }
  GeneratorSpec spec;
  spec.family = in.family;
  spec.n = in.n;
  spec.k = in.k;
  spec.seed = in.seed;
  return generate(spec).front();
}

json evaluate(const Instance& in, std::size_t index, int oracle_limit) {
  const auto start = std::chrono::steady_clock::now();
  json rec;
  rec["index"] = index;
  rec["family"] = in.family;
  if (in.seeded) rec["seed"] = in.seed;
  if (in.k > 0) rec["k"] = in.k;
  bool internal = false;
  try {
    const NearTriangulation t = build(in);
    const int n = t.order();
    rec["n"] = n;
    rec["interior"] = t.interior_count();
    rec["class"] = std::string(to_string(classify(t)));
    const bool exc = is_exception(t);
    rec["exception"] = exc;
    VertexSet set;
    if (exc) {
      rec["method"] = "mop-dp";
      set = *mop_min_tds(t);
    } else {
      rec["method"] = "constructive";
      set = tds_neartri(t).vertices;
    }
    const int bound = certificate_bound(t);
    const int size = static_cast<int>(set.size());
    bool ok = is_tds(t, set) && size <= bound;
    rec["size"] = size;
    rec["bound"] = bound;
    if (n <= oracle_limit) {
      SearchLimits lim;
      lim.max_n = oracle_limit;
      const SearchResult r = exact_tds(t, {}, lim);
      if (r.ok()) {
        rec["exact"] = r.size();
        ok = ok && r.size() <= size && r.size() <= bound;
      } else {
        rec["exact"] = nullptr;
        ok = false;
        rec["error"] = "oracle budget exceeded";
      }
    }
    rec["ok"] = ok;
  } catch (const LedgerError& e) {
    rec["ok"] = false;
    rec["error"] = e.what();
    internal = true;
  } catch (const std::exception& e) {
    rec["ok"] = false;
    rec["error"] = e.what();
  }
  rec["internal"] = internal;
  rec["millis"] = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return rec;
}

std::string cell(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return "-";
  const json& v = j[key];
  if (v.is_boolean()) return v.get<bool>() ? "yes" : "no";
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(1) << v.get<double>();
    return ss.str();
  }
  return v.dump();
}

}  // namespace

NearTriangulation read_ntg_file(const std::string& path) { return parse_ntg(read_file(path)); }

json certificate_json(const NearTriangulation& t, const TdsCertificate& cert, const std::string& method) {
  json out;
  out["n"] = t.order();
  out["method"] = method;
  out["size"] = cert.size();
  out["bound"] = certificate_bound(t);
  out["vertices"] = cert.vertices;
  out["trace"] = json::array();
  for (const auto& s : cert.trace) {
    out["trace"].push_back({{"case_id", std::string(to_string(s.case_id))},
                            {"depth", s.depth},
                            {"n", s.n},
                            {"k", s.k},
                            {"d", s.d},
                            {"bound", s.bound},
                            {"size", s.size},
                            {"anchored", s.anchored},
                            {"removed", s.removed}});
  }
  return out;
}

std::string check_certificate(const NearTriangulation& t, const json& cert) {
  if (!cert.is_object()) return "certificate is not an object";
  for (const char* key : {"n", "size", "bound", "vertices"}) {
    if (!cert.contains(key)) return std::string("missing field '") + key + "'";
  }
  const int n = t.order();
  if (cert["n"].get<int>() != n) return "order mismatch";
  if (cert["bound"].get<int>() != certificate_bound(t)) return "bound does not match the graph";
  std::vector<char> in(n, 0);
  int count = 0;
  for (const auto& v : cert["vertices"]) {
    const int x = v.get<int>();
    if (x < 0 || x >= n) return "vertex out of range";
    if (in[x]) return "repeated vertex";
    in[x] = 1;
    ++count;
  }
  if (count != cert["size"].get<int>()) return "size does not match the vertex list";
  if (count > cert["bound"].get<int>()) return "size exceeds bound";
  for (int v = 0; v < n; ++v) {
    const auto& nb = t.rotation(v);
    if (std::none_of(nb.begin(), nb.end(), [&](VertexId w) { return in[w] != 0; })) {
      return "vertex " + std::to_string(v) + " has no neighbour in the set";
    }
  }
  return {};
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    const int a = std::stoi(text.substr(0, dots));
    const int b = std::stoi(text.substr(dots + 2));
    if (a > b) throw PreconditionError("empty range '" + text + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw PreconditionError("bad range '" + text + "'");
  }
}

int cmd_validate(const std::string& path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NearTriangulation t = load(path);
    emit(out,
         {{"file", path},
          {"valid", true},
          {"n", t.order()},
          {"interior", t.interior_count()},
          {"class", std::string(to_string(classify(t)))}},
         false);
    return int{kOk};
  });
}

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.count < 1) throw PreconditionError("count must be positive");
    std::error_code ec;
    std::filesystem::create_directories(args.out_dir, ec);
    if (ec) throw IoError("cannot create '" + args.out_dir + "'");
    for (int c = 0; c < args.count; ++c) {
      GeneratorSpec spec;
      spec.family = args.family;
      spec.n = args.n;
      spec.k = args.k;
      spec.interior = args.interior;
      spec.seed = args.seed + static_cast<std::uint64_t>(c);
      const auto graphs = generate(spec);
      for (std::size_t i = 0; i < graphs.size(); ++i) {
        const auto path = (std::filesystem::path(args.out_dir) / file_name(args, static_cast<int>(i), spec.seed)).string();
        write_file(path, to_ntg(graphs[i]));
        out << path << "\n";
      }
    }
    return int{kOk};
  });
}

int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NearTriangulation t = load(args.path);
    TdsCertificate cert;
    if (args.method == "constructive") {
      cert = tds_neartri(t);
    } else if (args.method == "exact") {
      SearchLimits lim;
      lim.max_n = oracle_cap();
      const SearchResult r = exact_tds(t, {}, lim);
      if (!r.ok()) throw std::runtime_error("exact search exceeded its budget");
      cert.vertices = r.vertices;
    } else if (args.method == "mop-dp") {
      if (t.interior_count() != 0) throw PreconditionError("mop-dp needs a MOP");
      cert = exact_tds_mop(t);
    } else {
      throw PreconditionError("unknown method '" + args.method + "'");
    }
    emit(out, certificate_json(t, cert, args.method), args.pretty);
    return int{kOk};
  });
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const std::string& f = args.family;
    std::vector<Instance> todo;
    std::vector<NearTriangulation> pool;  // fixed graphs, filled before pointers are taken
    if (f == "random_neartri" || f == "random_mop") {
      std::uint64_t i = 0;
      for (int n = args.n_lo; n <= args.n_hi; ++n) {
        for (int s = 0; s < args.samples; ++s, ++i) {
          Instance in;
          in.family = f;
          in.n = n;
          in.seed = args.seed + i;
          in.seeded = true;
          in.interior = args.interior;
          todo.push_back(in);
        }
      }
    } else if (f == "fan" || f == "wheel") {
      for (int n = args.n_lo; n <= args.n_hi; ++n) todo.push_back({f, n, 0, 0, false, -1, nullptr});
    } else if (f == "tight_mop" || f == "octahedra") {
      for (int k = args.k_lo; k <= args.k_hi; ++k) todo.push_back({f, 0, k, 0, false, -1, nullptr});
    } else if (f == "h7") {
      todo.push_back({f, 7, 0, 0, false, -1, nullptr});
    } else if (f == "exceptions") {
      const Exceptions& ex = derive_exceptions();
      pool = {ex.h1, ex.h2};
    } else if (f == "enumerate-mops") {
      for (int n = args.n_lo; n <= args.n_hi; ++n) {
        auto classes = enumerate_mops(n).classes;
        for (auto& m : classes) pool.push_back(std::move(m));
      }
    } else {
      throw PreconditionError("unknown family '" + f + "'");
    }
    for (const auto& g : pool) todo.push_back({f, g.order(), 0, 0, false, -1, &g});

    const int limit = std::min(args.oracle_max, oracle_cap());
    std::vector<json> records(todo.size());
    std::atomic<std::size_t> next{0};
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const unsigned workers = std::min<std::size_t>(args.threads > 0 ? args.threads : hw, std::max<std::size_t>(todo.size(), 1));
    derive_exceptions();  // warm the shared cache before the workers start
    std::vector<std::thread> threads;
    for (unsigned w = 0; w < workers; ++w) {
      threads.emplace_back([&] {
        for (std::size_t i = next++; i < todo.size(); i = next++) records[i] = evaluate(todo[i], i, limit);
      });
    }
    for (auto& th : threads) th.join();

    int failures = 0, exceptions = 0;
    bool internal = false;
    double max_ratio = 0.0;
    for (const auto& r : records) {
      if (!r["ok"].get<bool>()) ++failures;
      if (r["internal"].get<bool>()) internal = true;
      if (r.value("exception", false)) {
        ++exceptions;
      } else if (r.contains("size") && r["bound"].get<int>() > 0) {
        max_ratio = std::max(max_ratio, r["size"].get<double>() / r["bound"].get<double>());
      }
    }
    const json summary{{"summary", true},
                       {"family", f},
                       {"count", records.size()},
                       {"failures", failures},
                       {"exceptions", exceptions},
                       {"max_ratio", max_ratio}};
    if (args.pretty) {
      out << std::left << std::setw(7) << "index" << std::setw(9) << "n" << std::setw(9) << "interior"
          << std::setw(13) << "class" << std::setw(6) << "size" << std::setw(7) << "bound" << std::setw(7)
          << "exact" << std::setw(5) << "ok" << "ms\n";
      for (const auto& r : records) {
        out << std::left << std::setw(7) << cell(r, "index") << std::setw(9) << cell(r, "n") << std::setw(9)
            << cell(r, "interior") << std::setw(13) << cell(r, "class") << std::setw(6) << cell(r, "size")
            << std::setw(7) << cell(r, "bound") << std::setw(7) << cell(r, "exact") << std::setw(5)
            << cell(r, "ok") << cell(r, "millis") << "\n";
        if (r.contains("error")) out << "  error: " << r["error"].get<std::string>() << "\n";
      }
      out << "count " << records.size() << ", failures " << failures << ", exceptions " << exceptions
          << ", max ratio " << std::fixed << std::setprecision(4) << max_ratio << "\n";
    } else {
      for (const auto& r : records) out << r.dump() << "\n";
      out << summary.dump() << "\n";
    }
    if (failures == 0) return int{kOk};
    return internal ? int{kInternal} : int{kValidation};
  });
}

int cmd_inspect(const std::string& path, bool pretty, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const NearTriangulation t = load(path);
    emit(out, json::parse(decomposition_json(t)), pretty);
    return int{kOk};
  });
}

int cmd_replay(const std::string& cert_path, const std::string& ntg_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const json cert = json::parse(read_file(cert_path));
    const NearTriangulation t = load(ntg_path);
    const std::string reason = check_certificate(t, cert);
    json report{{"ok", reason.empty()}, {"n", t.order()}};
    if (cert.contains("size")) report["size"] = cert["size"];
    if (cert.contains("bound")) report["bound"] = cert["bound"];
    if (!reason.empty()) report["reason"] = reason;
    emit(out, report, false);
    return reason.empty() ? int{kOk} : int{kValidation};
  });
}

}  // namespace ntri::cli
