#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>

namespace {

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

RunResult run_cli(const std::string& args) {
    const std::string out_path = "cli_stdout.tmp";
    const std::string err_path = "cli_stderr.tmp";
    const std::string cmd =
        std::string(MPSLAB_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
    int status = std::system(cmd.c_str());
    RunResult r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out_path);
    r.err = slurp(err_path);
    std::remove(out_path.c_str());
    std::remove(err_path.c_str());
    return r;
}

std::string fixture(const std::string& name) {
    return std::string(MPSLAB_FIXTURE_DIR) + "/" + name;
}

bool contains(const std::string& text, const std::string& needle) {
    return text.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("usage errors exit 2, help exits 0") {
    CHECK(run_cli("").code == 2);
    CHECK(run_cli("nosuchcommand").code == 2);
    CHECK(run_cli("mps").code == 2);  // --prices is required
    CHECK(run_cli("--help").code == 0);
    CHECK(run_cli("fit --family nosuch --classes x").code == 2);
    CHECK(run_cli("corrdim").code == 2);  // neither --series nor --prices

    auto missing = run_cli("parse --prices /nonexistent/file");
    CHECK(missing.code == 1);
    CHECK(contains(missing.err, "error:"));
}

TEST_CASE("parse reports the series shape") {
    auto empty = run_cli("parse --prices " + fixture("empty.txt"));
    CHECK(empty.code == 0);
    CHECK(empty.out == "0 ticks\n");

    auto full = run_cli("parse --prices " + fixture("es_sample.txt") + " --calendar " +
                        fixture("es_calendar.csv"));
    CHECK(full.code == 0);
    CHECK(contains(full.out, "18 ticks\n"));
    CHECK(contains(full.out, "3 sessions, 3 ranges\n"));
    CHECK(contains(full.out, "dollar range 662.5\n"));

    // the B record is kept only under --all-records
    auto all = run_cli("parse --all-records --prices " + fixture("es_sample.txt"));
    CHECK(contains(all.out, "19 ticks\n"));
}

TEST_CASE("mps reproduces the reference close chain report") {
    auto r = run_cli("mps --cost-cents 466 --prices " + fixture("table7.csv"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "Ticker              = ES\n"));
    CHECK(contains(r.out, "Total P&L                        = 6150.44\n"));
    CHECK(contains(r.out, "Total number of trades           = 8\n"));
    CHECK(contains(r.out, "Number of losing trades          = 0\n"));
    CHECK(contains(r.out, "Largest drawdown                 = -4.66\n"));
    CHECK(contains(r.out, "Minimum account value            = 1122.84\n"));

    auto mps2 = run_cli("mps --cost 4.66 --strategy mps2 --prices " + fixture("table7.csv"));
    CHECK(mps2.code == 0);
    CHECK(contains(mps2.out, "Total number of trades           = 14\n"));

    auto extras = run_cli("mps --cost-cents 466 --threshold --sweep 0,466 --prices " +
                          fixture("table7.csv"));
    CHECK(extras.code == 0);
    CHECK(contains(extras.out, "do-nothing cost = 1406.25 (140625 cents)\n"));
    CHECK(contains(extras.out, "cost_cents,pl_cents,n_trades,total_units\n"));
    CHECK(contains(extras.out, "466,615044,8,16\n"));
}

TEST_CASE("fit minimizes and evaluates a rank histogram") {
    auto fit = run_cli("fit --family hurwitz --classes " + fixture("zbm13_chain.csv"));
    CHECK(fit.code == 0);
    CHECK(contains(fit.out, "family,params,chi2,dof,prob_sum\n"));
    CHECK(contains(fit.out, ",13.21498,6,"));

    auto at = run_cli("fit --family hurwitz --classes " + fixture("zbm13_chain.csv") +
                      " --params 2.385873201,1.510384234");
    CHECK(at.code == 0);
    CHECK(contains(at.out, "hurwitz,2.3858732;1.51038423,13.21498,6,0.953725178\n"));

    auto kuma = run_cli("fit --family kumaraswamy --moments 1.5 0.6 0.43 -0.59");
    CHECK(kuma.code == 0);
    CHECK(contains(kuma.out, "a,b,z_min,z_max,F0,shape_error,scale_error,evaluations\n"));
}

TEST_CASE("increment, conditional and independence tables") {
    const std::string common = " --prices " + fixture("es_sample.txt") + " --calendar " +
                               fixture("es_calendar.csv");
    auto inc = run_cli("increments" + common);
    CHECK(inc.code == 0);
    CHECK(contains(inc.out, "Type,Ticker,Size,Mean,Min,n_min,Max,n_max,StdDev,Skew,E-Kurt\n"));
    CHECK(contains(inc.out, "a,ES,15,"));
    CHECK(contains(inc.out, "b,ES,15,"));
    CHECK(contains(inc.out, "cw,ES,1,-28,"));  // weekend gap Nov 1 -> Nov 4

    auto cond = run_cli("conditional --b-transform abs --tail-lo 100" + common);
    CHECK(cond.code == 0);
    CHECK(contains(cond.out, "session,range,a,size,mean,std_dev,skew,e_kurt\n"));
    CHECK(contains(cond.out, ">=100"));

    auto ind = run_cli("independence --b-transform abs" + common);
    CHECK(ind.code == 0);
    CHECK(contains(ind.out, "Ticker,n,m_A,m_B,m_AB,L_n,I_n,chi2_n,eps_L,eps_I,xi\n"));
    CHECK(contains(ind.out, "ES,15,"));
}

TEST_CASE("ote summarizes the elements of a segmented series") {
    auto r = run_cli("ote --f-cost 49.99 --t-cost 4.66 --prices " +
                     fixture("es_sample.txt") + " --calendar " +
                     fixture("es_calendar.csv"));
    CHECK(r.code == 0);
    CHECK(contains(r.out, "3 elements over 3 sessions\n"));
    CHECK(contains(r.out, "lattice: n_min 8, pl_min 90.68, step 12.5\n"));
    CHECK(contains(r.out, "mean elements per session = 1\n"));
    CHECK(contains(r.out, "49.99,3,307.347,240.68,1,378.18,1,"));
}

TEST_CASE("simulate feeds corrdim") {
    auto sim = run_cli("simulate --n 400 --sigma 0.8 --seed 99 --out cli_sim.tmp");
    CHECK(sim.code == 0);
    const std::string csv = slurp("cli_sim.tmp");
    CHECK(contains(csv, "time_s,price\n0,100\n"));

    auto dim = run_cli("corrdim --series cli_sim.tmp --embedding 2 --algorithm naive");
    CHECK(dim.code == 0);
    CHECK(contains(dim.out, "points 200  m 2\n"));
    CHECK(contains(dim.out, "nu = "));

    auto boxed = run_cli("corrdim --series cli_sim.tmp --embedding 2 --algorithm boxed");
    CHECK(boxed.out == dim.out);  // identical counts, identical estimate
    std::remove("cli_sim.tmp");
}
