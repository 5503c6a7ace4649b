#include <doctest.h>

#include <rlp/scenario.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;
using rlp::RunOptions;

namespace {

fs::path case_dir(const std::string& name) {
  const fs::path p = fs::path("scenario_out") / name;
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

void write_text(const fs::path& p, const std::string& body) {
  std::ofstream out(p, std::ios::binary);
  out << body;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

int count_lines(const std::string& s) {
  return int(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("hash primitives") {
  // standard 64-bit FNV-1a test vectors
  CHECK(rlp::fnv1a_hash("") == 14695981039346656037ull);
  CHECK(rlp::fnv1a_hash("a") == 0xaf63dc4c8601ec8cull);
  CHECK(rlp::fnv1a_hash("abc") == 0xe71fa2190541574bull);
  CHECK(rlp::hash_hex(0xe71fa2190541574bull) == "e71fa2190541574b");
  CHECK(rlp::hash_hex(0xabcull) == "0000000000000abc");
}

TEST_CASE("config errors carry field paths") {
  const rlp::ConfigError e("density[2].profile.kind", "unknown profile kind");
  CHECK(e.path() == "density[2].profile.kind");
  CHECK(std::string(e.what()) == "density[2].profile.kind: unknown profile kind");
}

TEST_CASE("scenario hash covers config and subcommand, not threads or out dir") {
  const fs::path d1 = case_dir("hash1");
  const fs::path d2 = case_dir("hash2");
  const fs::path d3 = case_dir("hash3");
  const fs::path d4 = case_dir("hash4");

  RunOptions opt;
  opt.out_dir = d1.string();
  REQUIRE(rlp::run_scenario("table1", opt) == 0);
  opt.out_dir = d2.string();
  opt.threads = 4; // must not move the hash
  REQUIRE(rlp::run_scenario("table1", opt) == 0);
  opt.out_dir = d3.string();
  opt.threads = 1;
  opt.seed = 5; // joins the effective config
  REQUIRE(rlp::run_scenario("table1", opt) == 0);
  opt.out_dir = d4.string();
  opt.seed = -1;
  opt.tolerance = 0.25; // joins the effective config
  REQUIRE(rlp::run_scenario("table1", opt) == 0);

  const std::string h1 = first_line(read_file(d1 / "table1.csv"));
  const std::string h2 = first_line(read_file(d2 / "table1.csv"));
  const std::string h3 = first_line(read_file(d3 / "table1.csv"));
  const std::string h4 = first_line(read_file(d4 / "table1.csv"));
  CHECK(h1 == h2);
  CHECK(h1 != h3);
  CHECK(h1 != h4);
  CHECK(h3 != h4);

  // the stamp is the canonical sorted-key dump, hashed
  json canon;
  canon["subcommand"] = "table1";
  CHECK(h1 == "# scenario " + rlp::hash_hex(rlp::fnv1a_hash(canon.dump())));
  json canon_seed;
  canon_seed["seed"] = 5;
  canon_seed["subcommand"] = "table1";
  CHECK(h3 == "# scenario " + rlp::hash_hex(rlp::fnv1a_hash(canon_seed.dump())));
}

TEST_CASE("table1 subcommand writes the frozen table") {
  const fs::path dir = case_dir("table1");
  RunOptions opt;
  opt.out_dir = dir.string();
  REQUIRE(rlp::run_scenario("table1", opt) == 0);

  const std::string csv = read_file(dir / "table1.csv");
  CHECK(count_lines(csv) == 10); // hash + header + 8 rows
  CHECK(csv.find("kind,from,to,mu,cf,laplace_derivs,growth,time_derivs,class\n") !=
        std::string::npos);
  CHECK(csv.find("S,H^{-1/2}(Gamma),H^1(R^d),1,|s|/(sigma min(1,sigma)^2),3,"
                 "t^2 max(1,t^2),2,O(t)\n") != std::string::npos);
  CHECK(csv.find("W,H^{1/2}(Gamma),H^{-1/2}(Gamma),2,|s|^2/(sigma min(1,sigma)),4,"
                 "t^2 max(1,t),4,O(1)\n") != std::string::npos);
  CHECK(csv.find("NtD,") != std::string::npos);
  CHECK(csv.find("DtN,") != std::string::npos);

  // custom id renames the artifact
  write_text(dir / "cfg.json", R"({"id": "ops-table"})");
  RunOptions named;
  named.out_dir = dir.string();
  named.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("table1", named) == 0);
  CHECK(fs::exists(dir / "ops-table.csv"));
}

TEST_CASE("subcommand and config failures exit 2") {
  const fs::path dir = case_dir("errors");
  RunOptions opt;
  opt.out_dir = dir.string();

  CHECK(rlp::run_scenario("no-such-mode", opt) == 2);
  // cq-run demands a config file
  CHECK(rlp::run_scenario("cq-run", opt) == 2);

  RunOptions bad = opt;
  bad.config_path = (dir / "missing.json").string();
  CHECK(rlp::run_scenario("cq-run", bad) == 2);

  write_text(dir / "broken.json", "{ not json");
  bad.config_path = (dir / "broken.json").string();
  CHECK(rlp::run_scenario("cq-run", bad) == 2);

  write_text(dir / "toplevel.json", "[1, 2]");
  bad.config_path = (dir / "toplevel.json").string();
  CHECK(rlp::run_scenario("cq-run", bad) == 2);

  // schema violations: missing density, unknown profile kind, bad id
  write_text(dir / "nodens.json", R"({"kind": "V"})");
  bad.config_path = (dir / "nodens.json").string();
  CHECK(rlp::run_scenario("cq-run", bad) == 2);

  write_text(dir / "badprof.json",
             R"({"kind": "V", "density": [{"n": 0, "profile": {"kind": "wavelet"}}]})");
  bad.config_path = (dir / "badprof.json").string();
  CHECK(rlp::run_scenario("cq-run", bad) == 2);

  write_text(dir / "badid.json",
             R"({"id": "has space", "kind": "V",
                 "density": [{"n": 0, "profile": {"kind": "sine_power"}}]})");
  bad.config_path = (dir / "badid.json").string();
  CHECK(rlp::run_scenario("cq-run", bad) == 2);

  // 2D double layer is rejected by direct-run
  write_text(dir / "dl2d.json",
             R"({"dim": 2, "kind": "D", "point": [1.5, 0.0],
                 "density": [{"n": 0, "profile": {"kind": "sine_power"}}]})");
  bad.config_path = (dir / "dl2d.json").string();
  CHECK(rlp::run_scenario("direct-run", bad) == 2);
}

TEST_CASE("insufficient smoothness surfaces as a numerical failure") {
  const fs::path dir = case_dir("smooth");
  // W needs four time derivatives; sin^2 only has two
  write_text(dir / "cfg.json",
             R"({"kinds": ["W"], "t_end": 1.0, "report_count": 2,
                 "density": [{"n": 0, "profile": {"kind": "sine_power", "power": 2}}]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  CHECK(rlp::run_scenario("transfer", opt) == 1);
}

TEST_CASE("cq-run artifacts") {
  const fs::path dir = case_dir("cq");
  write_text(dir / "cfg.json",
             R"({"id": "probe", "dim": 2, "kind": "V", "dt": 0.05, "t_end": 0.25,
                 "density": [{"n": 0, "profile": {"kind": "sine_power", "power": 2}}]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("cq-run", opt) == 0);

  const std::string csv = read_file(dir / "probe_cq.csv");
  CHECK(count_lines(csv) == 2 + 6); // hash + header + j = 0..5
  CHECK(csv.find("t,value,h_minus_half,h_plus_half\n") != std::string::npos);

  const json summary = json::parse(read_file(dir / "probe_cq.json"));
  CHECK(summary.at("subcommand") == "cq-run");
  CHECK(summary.at("kind") == "V");
  CHECK(summary.at("steps") == 5);
  CHECK(summary.at("dt") == 0.05);
  CHECK(summary.at("final_h_minus_half").get<double>() > 0.0);
  const std::string stamp = first_line(csv);
  CHECK("# scenario " + summary.at("scenario_hash").get<std::string>() == stamp);
}

TEST_CASE("symbols artifact shape") {
  const fs::path dir = case_dir("symbols");
  write_text(dir / "cfg.json", R"({"max_mode": 2, "kinds": ["V"]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("symbols", opt) == 0);
  const std::string csv = read_file(dir / "symbols_symbols.csv");
  CHECK(csv.find("kind,n,s_re,s_im,value_re,value_im\n") != std::string::npos);
  CHECK(count_lines(csv) == 2 + 3 * 25); // 3 modes on the default 5x5 s-grid
  CHECK(csv.find("V,0,0.5,-4,") != std::string::npos);
}

TEST_CASE("direct-run artifact shape") {
  const fs::path dir = case_dir("direct");
  write_text(dir / "cfg.json",
             R"({"dim": 3, "kind": "S", "point": [0.0, 0.0, 1.5], "t_end": 0.5,
                 "steps": 2, "quad_order": 8,
                 "density": [{"n": 0, "profile": {"kind": "sine_power", "power": 2}}]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("direct-run", opt) == 0);
  const std::string csv = read_file(dir / "direct_direct.csv");
  CHECK(count_lines(csv) == 2 + 3);
  CHECK(csv.find("t,value\n") != std::string::npos);
}

TEST_CASE("wave-run artifacts and basis screening") {
  const fs::path dir = case_dir("wave");
  write_text(dir / "cfg.json",
             R"({"id": "drum", "domain": "disk", "outer_radius": 1.0,
                 "max_angular": 0, "max_radial": 4, "times": [0.5],
                 "forcing": [{"n": 0, "m": 1,
                              "profile": {"kind": "raised_cosine", "q": 2, "width": 1.0}}]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("wave-run", opt) == 0);

  const std::string csv = read_file(dir / "drum_wave.csv");
  CHECK(csv.find("t,l2,grad,lap_l2,tail_fraction\n") != std::string::npos);
  CHECK(count_lines(csv) == 3);
  const json summary = json::parse(read_file(dir / "drum_wave.json"));
  CHECK(summary.at("modes") == 4);
  CHECK(summary.at("domain") == "disk");
  CHECK(summary.at("poincare_constant").get<double>() ==
        doctest::Approx(1.0 / 2.404825557695773).epsilon(1e-12));

  // weak route uses its own columns
  write_text(dir / "weak.json",
             R"({"id": "drum-weak", "domain": "disk", "outer_radius": 1.0,
                 "max_angular": 0, "max_radial": 4, "times": [0.5], "solution": "weak",
                 "forcing": [{"n": 0, "m": 1,
                              "profile": {"kind": "raised_cosine", "q": 2, "width": 1.0}}]})");
  opt.config_path = (dir / "weak.json").string();
  REQUIRE(rlp::run_scenario("wave-run", opt) == 0);
  CHECK(read_file(dir / "drum-weak_wave.csv").find("t,grad,lap_w_residual\n") !=
        std::string::npos);

  // forcing outside the truncation is a schema error
  write_text(dir / "outside.json",
             R"({"domain": "disk", "outer_radius": 1.0, "max_angular": 0, "max_radial": 2,
                 "times": [0.5],
                 "forcing": [{"n": 1, "m": 1, "profile": {"kind": "sine_power"}}]})");
  opt.config_path = (dir / "outside.json").string();
  CHECK(rlp::run_scenario("wave-run", opt) == 2);
}

TEST_CASE("verify-bounds on silent data passes and writes every artifact") {
  const fs::path dir = case_dir("bounds");
  write_text(dir / "cfg.json",
             R"({"theorem": "3.1", "dim": 2, "a": 1.0, "R": 1.5, "dt": 0.1,
                 "times": [0.4, 0.8], "sample_count": 1, "sample_modes": 2,
                 "density": [{"n": 0, "profile": {"kind": "zero"}}]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("verify-bounds", opt) == 0);

  for (const char* name : {"bounds_bound_3e.csv", "bounds_bound_3f.csv", "bounds_bound_3g.csv"}) {
    const std::string csv = read_file(dir / name);
    CHECK(csv.find("t,lhs,rhs,margin,ratio\n") != std::string::npos);
    CHECK(count_lines(csv) == 4);
  }
  const json summary = json::parse(read_file(dir / "bounds_bounds.json"));
  CHECK(summary.at("subcommand") == "verify-bounds");
  CHECK(summary.at("theorem") == "3.1");
  CHECK(summary.at("pass") == true);
  const json& jc = summary.at("constants");
  for (const char* key : {"R", "delta", "c_gamma", "c_lift", "c_lift_ext", "c_nu", "safety",
                          "protocol"})
    CHECK(jc.contains(key));
  const json& reps = summary.at("reports");
  REQUIRE(reps.size() == 3);
  CHECK(reps[0].at("id") == "3.e");
  CHECK(reps[1].at("id") == "3.f");
  CHECK(reps[2].at("id") == "3.g");
  for (const auto& r : reps) CHECK(r.at("pass") == true);
}

TEST_CASE("transfer artifact shape") {
  const fs::path dir = case_dir("transfer");
  write_text(dir / "cfg.json",
             R"({"kinds": ["S", "Kt"], "times": [0.5, 1.0],
                 "density": [{"n": 0,
                              "profile": {"kind": "raised_cosine", "q": 3, "width": 1.0}}]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("transfer", opt) == 0);
  const std::string csv = read_file(dir / "transfer_transfer.csv");
  CHECK(csv.find("kind,t,mu,k,eps,prefactor,integral,value\n") != std::string::npos);
  CHECK(count_lines(csv) == 2 + 4);
  CHECK(csv.find("S,0.5,1,3,1,") != std::string::npos);
  CHECK(csv.find("Kt,1,1.5,3,0.5,") != std::string::npos);
  const json summary = json::parse(read_file(dir / "transfer_transfer.json"));
  CHECK(summary.at("kinds").size() == 2);
}

TEST_CASE("propagation artifact shape") {
  const fs::path dir = case_dir("prop");
  write_text(dir / "cfg.json",
             R"({"dim": 2, "kind": "S", "r": 1.5, "t_end": 1.2, "assert": false,
                 "dt_ladder": [0.2, 0.1],
                 "density": [{"n": 0, "profile": {"kind": "sine_power", "power": 2,
                                                  "onset": 0.5}}]})");
  RunOptions opt;
  opt.out_dir = dir.string();
  opt.config_path = (dir / "cfg.json").string();
  REQUIRE(rlp::run_scenario("propagation", opt) == 0);
  const std::string csv = read_file(dir / "propagation_propagation.csv");
  CHECK(csv.find("dt,pre_max,post_max\n") != std::string::npos);
  CHECK(count_lines(csv) == 2 + 2);
  const json summary = json::parse(read_file(dir / "propagation_propagation.json"));
  CHECK(summary.at("arrival").get<double>() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(summary.at("orders").size() == 1);

  // observation radius inside the boundary is a schema error
  write_text(dir / "inside.json",
             R"({"dim": 2, "r": 0.5, "t_end": 1.0, "dt_ladder": [0.1],
                 "density": [{"n": 0, "profile": {"kind": "sine_power", "power": 2}}]})");
  opt.config_path = (dir / "inside.json").string();
  CHECK(rlp::run_scenario("propagation", opt) == 2);
}
