#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "golden_fixtures.hpp"
#include "pgd/cli.hpp"

using namespace pgd;
namespace fs = std::filesystem;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

FlatConfig config(const std::string& text) {
  std::istringstream in(text);
  return FlatConfig::parse(in);
}

const char* kMerge =
    "mode = interact\nu_b = 3\nrho_b = 1\nu_L = 2\nrho_L = 1\nu_R = 0\nrho_R = 1\nx0 = 1\nhorizon = 1.5\n"
    "times = 0.5, 1.5\n";

fs::path scratch(const std::string& name) {
  auto p = fs::temp_directory_path() / ("pgd_io_test_" + std::to_string(::getpid())) / name;
  fs::create_directories(p.parent_path());
  return p;
}

}  // namespace

TEST(Json, SolutionRoundTripIsExact) {
  for (const auto& fx : golden::fixtures()) {
    const auto sol = evolve(fx.data);
    const auto text = to_json_text(sol);
    const auto back = solution_from_json_text(text);
    EXPECT_EQ(to_json_text(back), text) << fx.name;
    ASSERT_EQ(back.slabs.size(), sol.slabs.size());
    for (int k = 1; k <= 20; ++k) {
      const double t = sol.horizon * k / 20, x = 0.37 * k;
      EXPECT_EQ(evaluate(back, x, t).u, evaluate(sol, x, t).u) << fx.name;
      EXPECT_EQ(evaluate(back, x, t).rho_regular, evaluate(sol, x, t).rho_regular) << fx.name;
    }
    EXPECT_EQ(back.case_label, sol.case_label);
    EXPECT_EQ(back.exits.size(), sol.exits.size());
  }
}

TEST(Json, OpenEndedFrontsAndBadInput) {
  auto sol = solve_interior_riemann({{2, 1}, {0, 1}, 1}, 2.0);
  sol.slabs[0].fronts[0].t_end = kInfinity;
  const auto text = to_json_text(sol);
  EXPECT_NE(text.find("\"t_end\": null"), std::string::npos);
  EXPECT_TRUE(std::isinf(solution_from_json_text(text).slabs[0].fronts[0].t_end));
  try {
    solution_from_json_text("{\"horizon\": 1}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ParseError);
  }
  EXPECT_THROW(solution_from_json_text("not json"), Error);
}

TEST(EventLog, JsonLinesRoundTrip) {
  const auto sol = evolve({{3, 1}, {2, 1}, {0, 1}, 1, 1.5});
  std::stringstream ss;
  write_events_jsonl(ss, sol.events);
  const auto back = read_events_jsonl(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].kind, EventKind::FrontCollision);
  EXPECT_EQ(back[0].time, sol.events[0].time);
  EXPECT_EQ(back[0].e_after, sol.events[0].e_after);
  EXPECT_EQ(back[0].fronts_before, sol.events[0].fronts_before);
}

TEST(Table, RoundTripAtSeventeenDigits) {
  Table t{{"a", "b"}, {{0.1, 1.0 / 3.0}, {-2e-300, 6.02214076e23}}};
  std::stringstream ss;
  write_table(ss, t);
  EXPECT_EQ(ss.str().substr(0, 4), "a,b\n");
  const auto back = read_table(ss);
  EXPECT_EQ(back.columns, t.columns);
  EXPECT_EQ(back.rows, t.rows);
  std::istringstream ragged("a,b\n1,2\n3\n");
  EXPECT_THROW(read_table(ragged), Error);
  std::istringstream junk("a\n1x\n");
  EXPECT_THROW(read_table(junk), Error);
}

TEST(FlatConfig, ParsesCommentsListsAndRejectsDuplicates) {
  auto c = config("# c\n a = 1.5  # trailing\n\nlist = 0.2, 0.1,0.05\n");
  EXPECT_EQ(c.number("a"), 1.5);
  EXPECT_EQ(c.numbers("list"), (std::vector<double>{0.2, 0.1, 0.05}));
  EXPECT_THROW(config("a = 1\na = 2\n"), Error);
  EXPECT_THROW(config("no equals sign\n"), Error);
  EXPECT_THROW(config("a = nan\n").number("a"), Error);
  EXPECT_THROW(config("a = 1.5abc\n").number("a"), Error);
}

TEST(Scenario, RequiredFieldsPerMode) {
  const auto s = scenario_from_config(config(kMerge));
  EXPECT_EQ(s.mode, Mode::Interact);
  EXPECT_EQ(s.data.x0, 1.0);
  EXPECT_EQ(s.times, (std::vector<double>{0.5, 1.5}));

  std::string no_x0 = kMerge;
  no_x0.erase(no_x0.find("x0 = 1\n"), 7);
  try {
    scenario_from_config(config(no_x0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("x0"), std::string::npos);
  }
  // Boundary Riemann problems need neither x0 nor a right state.
  EXPECT_NO_THROW(scenario_from_config(config("u_b = 1\nrho_b = 1\nu_L = 2\nrho_L = 1\nhorizon = 1\n"),
                                       Mode::BoundaryRiemann));
  EXPECT_THROW(scenario_from_config(config(kMerge), Mode::Viscous), Error);
  EXPECT_THROW(scenario_from_config(config(std::string(kMerge) + "epsilon_list = 0.1, 0.2, 0.05\n"), Mode::Converge),
               Error);
  std::string neg = kMerge;
  neg.replace(neg.find("rho_L = 1"), 9, "rho_L = -1");
  EXPECT_THROW(scenario_from_config(config(neg)), Error);
}

TEST(Compare, ExactAgainstItselfAndEmptyWindow) {
  const auto sol = solve_interior_riemann({{2, 1}, {0, 1}, 1}, 2.0);
  const auto grid = uniform_grid(0.05, 4.0, 80, {0.5, 1.0});
  ViscousField f;
  f.grid_x = grid.x;
  f.grid_t = grid.t;
  f.epsilon = 1;
  for (double t : grid.t) {
    std::vector<double> u, r;
    for (double x : grid.x) {
      const auto s = evaluate(sol, x, t);
      u.push_back(s.u);
      r.push_back(s.rho_regular);
    }
    f.u.push_back(u);
    f.rho.push_back(r);
  }
  f.R = f.rho;
  for (const auto& row : compare(sol, f, 0.2)) {
    EXPECT_EQ(row.sup, 0.0);
    EXPECT_EQ(row.l1, 0.0);
    EXPECT_GT(row.points, 0);
  }
  try {
    compare(sol, f, 10.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyComparison);
  }
}

TEST(Compare, InertBoundaryCaseWithinTenth) {
  // u0 = u_b = -1: the viscous solution is exact, so the distance is rounding.
  const ProblemData d{{-1, 1}, {-1, 1}, {-1, 1}, 1.0, 1.0};
  const auto sol = evolve(d);
  const auto field = viscous_fields(solve_pq_explicit(viscous_inputs(d, 0.05, false), 0.05, uniform_grid(0.1, 3, 60, {1.0})));
  EXPECT_LT(compare(sol, field, 0.2)[0].sup, 0.1);
}

TEST(CaseLabels, RiemannModes) {
  EXPECT_EQ(boundary_case({{1, 2}, {1, 1}}).case_number, 1);
  EXPECT_EQ(boundary_case({{-1, 5}, {-1, 1}}).case_number, 2);
  EXPECT_EQ(boundary_case({{1, 1}, {2, 1}}).case_number, 3);
  EXPECT_EQ(boundary_case({{-1, 1}, {2, 1}}).case_number, 4);
  EXPECT_EQ(boundary_case({{2, 2}, {1, 1}}).case_number, 5);
  EXPECT_EQ(boundary_case({{0.5, 1}, {-1, 1}}).case_number, 2);
  EXPECT_EQ(interior_case({{1, 1}, {1, 2}, 1}).case_number, 1);
  EXPECT_EQ(interior_case({{0, 1}, {1, 2}, 1}).case_number, 2);
  EXPECT_EQ(interior_case({{2, 1}, {0, 1}, 1}).case_number, 3);
}

TEST(RunScenario, OutputsParseAndRepeatByteForByte) {
  const auto cfg = scratch("merge.cfg");
  std::ofstream(cfg) << kMerge;
  const auto a = run_scenario_file(cfg.string(), std::nullopt, (cfg.parent_path() / "a" / "merge").string());
  const auto b = run_scenario_file(cfg.string(), std::nullopt, (cfg.parent_path() / "b" / "merge").string());
  ASSERT_EQ(a.status, 0) << a.message;
  ASSERT_EQ(a.files.size(), b.files.size());
  for (std::size_t k = 0; k < a.files.size(); ++k) EXPECT_EQ(slurp(a.files[k]), slurp(b.files[k])) << a.files[k];
  for (const auto& f : a.files) {
    std::ifstream in(f);
    if (f.ends_with(".csv")) {
      EXPECT_NO_THROW(read_table(in)) << f;
    } else if (f.ends_with(".jsonl")) {
      EXPECT_EQ(read_events_jsonl(in).size(), 1u);
    } else if (f.ends_with(".json")) {
      EXPECT_NO_THROW(solution_from_json_text(slurp(f)));
    }
  }
  std::ifstream profiles(cfg.parent_path() / "a" / "merge.profiles.csv");
  const auto t = read_table(profiles);
  EXPECT_EQ(t.columns, (std::vector<std::string>{"x", "t", "u", "rho"}));
  EXPECT_EQ(t.rows.size(), 2u * 201u);
  fs::remove_all(cfg.parent_path());
}

TEST(RunScenario, ExitStatuses) {
  const auto bad = scratch("bad.cfg");
  std::ofstream(bad) << "mode = interact\nu_b = 1\n";
  EXPECT_EQ(run_scenario_file(bad.string(), std::nullopt, (bad.parent_path() / "bad").string()).status, 2);
  EXPECT_EQ(run_scenario_file((bad.parent_path() / "missing.cfg").string(), std::nullopt, "x").status, 2);
  // A grid window that leaves no point outside the exclusion radius is a solver-side failure.
  const auto empty = scratch("empty.cfg");
  std::ofstream(empty) << "mode = viscous\nu_b = 1\nrho_b = 1\nu_L = 1\nrho_L = 1\nu_R = 1\nrho_R = 1\nx0 = 1\n"
                          "horizon = 0.5\nepsilon = 0.1\nx_max = 0.5\nexclusion_radius = 1\ngrid_nx = 20\n";
  EXPECT_EQ(run_scenario_file(empty.string(), std::nullopt, (empty.parent_path() / "empty").string()).status, 3);
  fs::remove_all(bad.parent_path());
}
