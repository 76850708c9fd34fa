#include "mpslab/cli.hpp"

#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mpslab/chaos.hpp"
#include "mpslab/contracts.hpp"
#include "mpslab/distributions.hpp"
#include "mpslab/errors.hpp"
#include "mpslab/increments.hpp"
#include "mpslab/moments.hpp"
#include "mpslab/mps.hpp"
#include "mpslab/ote.hpp"
#include "mpslab/stattests.hpp"
#include "mpslab/ticks.hpp"

namespace mpslab::cli {
namespace {

ContractSpec contract_or_throw(const std::string& symbol) {
    auto spec = find_contract(symbol);
    if (!spec) throw UsageError("unknown contract: " + symbol);
    return *spec;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::string resolved = path;
    const char* base = std::getenv("MPSLAB_OUT");
    if (base && *base && !path.empty() && path.front() != '/')
        resolved = std::string(base) + "/" + path;
    std::ofstream out(resolved, std::ios::binary);
    if (!out) throw IoError("cannot write " + resolved);
    out << text;
    out.flush();
    if (!out) throw IoError("short write: " + resolved);
}

// stdout unless --out was given.
void emit(const std::string& out, const std::string& text) {
    if (out.empty())
        std::cout << text;
    else
        write_file(out, text);
}

std::int64_t to_i64(const std::string& text) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(text, &used);
        if (used != text.size()) throw MalformedLine("not an integer: " + text);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw MalformedLine("not an integer: " + text);
    }
}

double to_f64(const std::string& text) {
    try {
        std::size_t used = 0;
        double v = std::stod(text, &used);
        if (used != text.size()) throw MalformedLine("not a number: " + text);
        return v;
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        throw MalformedLine("not a number: " + text);
    }
}

std::int64_t dollars_to_cents(double dollars) {
    return static_cast<std::int64_t>(std::llround(dollars * 100.0));
}

std::string cents_to_dollars(std::int64_t cents) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", static_cast<double>(cents) / 100.0);
    return buf;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
        std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

// ------------------------------------------------------------ price chains

struct Chain {
    std::vector<std::int64_t> times_s;
    std::vector<std::int64_t> prices;  // delta ticks
};

std::int64_t parse_csv_time(const std::string& field) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    if (std::sscanf(field.c_str(), "%d-%d-%d %d:%d:%d", &y, &mo, &d, &h, &mi, &s) != 6)
        throw MalformedLine("bad time: " + field);
    return ticks::days_from_civil(y, mo, d) * 86400 + h * 3600 + mi * 60 + s;
}

// A chain file is either a `YYYY-MM-DD HH:MM:SS,price` CSV or a full
// Time & Sales file; the first line decides.
bool looks_like_csv(const std::string& text) {
    for (char ch : text) {
        if (ch == '\n') break;
        if (ch == ',') return true;
    }
    return false;
}

Chain read_chain(const std::string& path, const ContractSpec& spec) {
    const std::string text = read_file(path);
    Chain chain;
    if (looks_like_csv(text)) {
        for (const std::string& line : lines_of(text)) {
            auto comma = line.find(',');
            if (comma == std::string::npos) throw MalformedLine(line);
            chain.times_s.push_back(parse_csv_time(line.substr(0, comma)));
            chain.prices.push_back(price_to_ticks(line.substr(comma + 1), spec.delta));
        }
    } else {
        ticks::TickSeries series = ticks::parse_time_sales(text, spec);
        chain.times_s.reserve(series.ticks.size());
        chain.prices.reserve(series.ticks.size());
        for (const auto& t : series.ticks) {
            chain.times_s.push_back(t.time_s);
            chain.prices.push_back(t.price_ticks);
        }
    }
    return chain;
}

// Scalar series for corrdim: `v` or `...,v` per line, header lines skipped.
std::vector<double> read_series_values(const std::string& path) {
    std::vector<double> values;
    for (const std::string& line : lines_of(read_file(path))) {
        std::string field = line;
        if (auto comma = line.rfind(','); comma != std::string::npos)
            field = line.substr(comma + 1);
        char* end = nullptr;
        double v = std::strtod(field.c_str(), &end);
        if (end == field.c_str() || *end != '\0') {
            if (values.empty()) continue;  // header
            throw MalformedLine(line);
        }
        values.push_back(v);
    }
    return values;
}

std::vector<distributions::Chi2Class> read_classes(const std::string& path) {
    std::vector<distributions::Chi2Class> classes;
    for (const std::string& line : lines_of(read_file(path))) {
        auto fields = split(line, ',');
        if (fields.size() != 3) throw MalformedLine(line);
        char* end = nullptr;
        (void)std::strtoll(fields[0].c_str(), &end, 10);
        if (end == fields[0].c_str() && classes.empty()) continue;  // header
        classes.push_back({to_i64(fields[0]), to_i64(fields[1]), to_i64(fields[2])});
    }
    return classes;
}

// ------------------------------------------------------------- subcommands

struct CommonOpts {
    std::string prices;
    std::string contract = "ES";
    std::string calendar;
    std::string out;
};

int cmd_parse(const CommonOpts& opt, bool all_records) {
    auto spec = contract_or_throw(opt.contract);
    auto series = ticks::parse_time_sales_file(opt.prices, spec, !all_records);
    std::ostringstream msg;
    msg << series.ticks.size() << " ticks\n";
    if (!opt.calendar.empty()) {
        auto calendar = ticks::parse_calendar_file(opt.calendar);
        auto index = ticks::segment_sessions(series, calendar);
        std::size_t ranges = 0;
        for (const auto& s : index.sessions) ranges += s.ranges.size();
        msg << index.sessions.size() << " sessions, " << ranges << " ranges\n";
        if (!series.ticks.empty())
            msg << "dollar range " << cents_to_dollars(ticks::dollar_range(series, spec))
                << "\n";
    }
    if (!opt.out.empty()) write_file(opt.out, ticks::serialize_time_sales(series));
    std::cout << msg.str();
    return 0;
}

int cmd_increments(const CommonOpts& opt) {
    auto spec = contract_or_throw(opt.contract);
    auto series = ticks::parse_time_sales_file(opt.prices, spec);
    auto calendar = ticks::parse_calendar_file(opt.calendar);
    auto index = ticks::segment_sessions(series, calendar);

    std::vector<std::int64_t> a_all, b_all;
    for (const auto& session : index.sessions) {
        for (const auto& range : session.ranges) {
            auto a = increments::a_increments(series, range);
            auto b = increments::b_increments(series, range);
            if (!a.defined) continue;
            a_all.insert(a_all.end(), a.values.begin(), a.values.end());
            b_all.insert(b_all.end(), b.values.begin(), b.values.end());
        }
    }
    auto [a1, a2] = increments::a1_a2_increments(series, index);
    auto cs = increments::c_family(series, index, calendar);

    std::vector<increments::AppendixRow> rows;
    auto add = [&](const std::string& type, std::span<const std::int64_t> values) {
        if (!values.empty())
            rows.push_back({type, spec.symbol, increments::moments(values)});
    };
    add("a", a_all);
    add("b", b_all);
    add("a1", a1.values);
    add("a2", a2.values);
    add("c", cs.c.values);
    add("cr", cs.cr.values);
    add("cw", cs.cw.values);
    add("ch", cs.ch.values);
    add("ci", cs.ci.values);
    emit(opt.out, increments::appendix_csv(rows));
    return 0;
}

int cmd_conditional(const CommonOpts& opt, const std::string& transform_name,
                    std::optional<std::int64_t> tail_lo) {
    auto spec = contract_or_throw(opt.contract);
    auto series = ticks::parse_time_sales_file(opt.prices, spec);
    auto calendar = ticks::parse_calendar_file(opt.calendar);
    auto index = ticks::segment_sessions(series, calendar);

    increments::BTransform transform;
    if (transform_name == "identity")
        transform = increments::BTransform::Identity;
    else if (transform_name == "abs")
        transform = increments::BTransform::Abs;
    else if (transform_name == "square")
        transform = increments::BTransform::Square;
    else
        throw UsageError("unknown b transform: " + transform_name);

    std::ostringstream csv;
    csv << "session,range,a,size,mean,std_dev,skew,e_kurt\n";
    auto row = [&](std::size_t si, std::size_t ri, const std::string& a_label,
                   const increments::MomentSummary& m) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%zu,%zu,%s,%zu,%.6g,%.6g,%s,%s\n", si, ri,
                      a_label.c_str(), m.size, m.mean, m.std_dev,
                      increments::stat_or_undefined(m.skewness, m.has_skewness).c_str(),
                      increments::stat_or_undefined(m.excess_kurtosis,
                                                    m.has_excess_kurtosis)
                          .c_str());
        csv << buf;
    };
    for (std::size_t si = 0; si < index.sessions.size(); ++si) {
        const auto& session = index.sessions[si];
        for (std::size_t ri = 0; ri < session.ranges.size(); ++ri) {
            const auto& range = session.ranges[ri];
            if (range.count < 2) continue;
            auto cond = increments::conditional_b_given_a(series, range, transform, tail_lo);
            for (const auto& [a, m] : cond.by_a) row(si, ri, std::to_string(a), m);
            if (cond.tail) {
                char label[48];
                std::snprintf(label, sizeof label, ">=%" PRId64, cond.tail_lo);
                row(si, ri, label, *cond.tail);
            }
        }
    }
    emit(opt.out, csv.str());
    return 0;
}

distributions::Chi2Family family_of(const std::string& name) {
    if (name == "riemann") return distributions::Chi2Family::Riemann;
    if (name == "hurwitz") return distributions::Chi2Family::Hurwitz;
    if (name == "zipf" || name == "zipf-mandelbrot")
        return distributions::Chi2Family::ZipfMandelbrot;
    if (name == "extreme" || name == "extreme-type2")
        return distributions::Chi2Family::ExtremeType2;
    throw UsageError("unknown family: " + name);
}

std::vector<distributions::ParamBounds> default_bounds(distributions::Chi2Family family) {
    using distributions::Chi2Family;
    switch (family) {
        case Chi2Family::Riemann: return {{1.2, 5.0}};
        case Chi2Family::Hurwitz:
        case Chi2Family::ZipfMandelbrot: return {{1.2, 5.0}, {0.01, 8.0}};
        case Chi2Family::ExtremeType2: return {{1.0, 5.0}, {0.01, 1.0}};
    }
    throw UsageError("unknown family");
}

int cmd_fit(const std::string& family_name, const std::string& classes_path,
            const std::vector<std::string>& bounds_spec, const std::string& params_spec,
            const std::vector<double>& target_moments, const std::string& out) {
    if (family_name == "kumaraswamy") {
        if (target_moments.size() != 4)
            throw UsageError("kumaraswamy needs --moments mean,std,skew,ekurt");
        increments::MomentSummary target;
        target.size = 2;
        target.mean = target_moments[0];
        target.std_dev = target_moments[1];
        target.skewness = target_moments[2];
        target.excess_kurtosis = target_moments[3];
        target.has_skewness = true;
        target.has_excess_kurtosis = true;
        auto fit = distributions::fit_kumaraswamy_moments(target);
        char buf[256];
        std::snprintf(buf, sizeof buf,
                      "a,b,z_min,z_max,F0,shape_error,scale_error,evaluations\n"
                      "%.6g,%.6g,%.6g,%.6g,%.6g,%.3g,%.3g,%" PRId64 "\n",
                      fit.params.a, fit.params.b, fit.params.z_min, fit.params.z_max,
                      fit.params.F0, fit.shape_error, fit.scale_error, fit.evaluations);
        emit(out, buf);
        return 0;
    }

    auto family = family_of(family_name);
    if (classes_path.empty()) throw UsageError("--classes is required for " + family_name);
    auto classes = read_classes(classes_path);

    distributions::Chi2Fit fit;
    if (!params_spec.empty()) {
        std::vector<double> params;
        for (const auto& field : split(params_spec, ',')) params.push_back(to_f64(field));
        fit = distributions::eval_chi2(family, classes, params);
    } else {
        auto box = default_bounds(family);
        if (!bounds_spec.empty()) {
            box.clear();
            for (const auto& spec : bounds_spec) {
                auto parts = split(spec, ':');
                if (parts.size() != 2) throw UsageError("--bounds wants lo:hi, got " + spec);
                box.push_back({to_f64(parts[0]), to_f64(parts[1])});
            }
        }
        fit = distributions::fit_chi2(family, classes, box);
    }
    emit(out, distributions::fit_report_csv(fit, classes));
    return 0;
}

int cmd_independence(const CommonOpts& opt, const std::string& transform_name,
                     bool dump_cells, std::int64_t min_count) {
    auto spec = contract_or_throw(opt.contract);
    auto series = ticks::parse_time_sales_file(opt.prices, spec);
    auto calendar = ticks::parse_calendar_file(opt.calendar);
    auto index = ticks::segment_sessions(series, calendar);

    stattests::BTransform transform;
    if (transform_name == "signed")
        transform = stattests::BTransform::Signed;
    else if (transform_name == "abs")
        transform = stattests::BTransform::Absolute;
    else
        throw UsageError("unknown b transform: " + transform_name);

    std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
    for (const auto& session : index.sessions) {
        for (const auto& range : session.ranges) {
            auto a = increments::a_increments(series, range);
            auto b = increments::b_increments(series, range);
            if (!a.defined) continue;
            for (std::size_t i = 0; i < a.values.size(); ++i)
                pairs.emplace_back(a.values[i], b.values[i]);
        }
    }
    auto table = stattests::contingency(pairs, transform);
    auto result = stattests::independence_tests(table);

    std::ostringstream text;
    text << stattests::independence_csv_header()
         << stattests::independence_csv_row(spec.symbol, result);
    if (dump_cells)
        text << stattests::cells_csv(stattests::high_count_cells(table, min_count));
    emit(opt.out, text.str());
    return 0;
}

int cmd_corrdim(const std::string& series_path, const CommonOpts& opt, std::size_t m,
                const std::string& algorithm_name, std::size_t grid_count,
                std::size_t window) {
    if (series_path.empty() == opt.prices.empty())
        throw UsageError("pass exactly one of --series or --prices");

    std::vector<double> values;
    if (!series_path.empty()) {
        values = read_series_values(series_path);
    } else {
        auto spec = contract_or_throw(opt.contract);
        auto series = ticks::parse_time_sales_file(opt.prices, spec);
        values.reserve(series.ticks.size());
        for (const auto& t : series.ticks)
            values.push_back(static_cast<double>(t.price_ticks));
    }

    chaos::PairAlgorithm algorithm;
    if (algorithm_name == "naive")
        algorithm = chaos::PairAlgorithm::Naive;
    else if (algorithm_name == "boxed")
        algorithm = chaos::PairAlgorithm::Boxed;
    else
        throw UsageError("unknown algorithm: " + algorithm_name);

    auto points = chaos::embed(values, m);
    chaos::EmbeddingConfig config{m, chaos::default_r_grid(points, grid_count)};
    auto curve = chaos::correlation_integral(points, config, algorithm);
    auto estimate = chaos::estimate_dimension(curve, window);

    if (!opt.out.empty()) write_file(opt.out, chaos::curve_lnln_text(curve));
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "points %zu  m %zu\nnu = %.6g  (r in [%.6g, %.6g])\n", points.n, m,
                  estimate.nu, estimate.r_lo, estimate.r_hi);
    std::cout << buf;
    return 0;
}

int cmd_simulate(std::size_t n, double price0, double drift, double sigma,
                 double time_scale, std::uint64_t seed, const std::string& out) {
    auto series = chaos::simulate_bachelier(price0, drift, sigma, n, time_scale, seed);
    std::ostringstream csv;
    csv << "time_s,price\n";
    char buf[80];
    for (std::size_t i = 0; i < series.prices.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%" PRId64 ",%.17g\n", series.times_s[i],
                      series.prices[i]);
        csv << buf;
    }
    emit(out, csv.str());
    return 0;
}

int cmd_mps(const CommonOpts& opt, const std::string& ticker, std::int64_t cost_cents,
            const std::string& strategy_name, const std::string& variant_name,
            std::optional<std::int64_t> account_cents, std::optional<std::int64_t> margin_cents,
            std::optional<std::int64_t> maintenance_cents, const std::string& spectrum_path,
            bool print_threshold, const std::string& sweep_spec) {
    auto spec = contract_or_throw(opt.contract);
    auto chain = read_chain(opt.prices, spec);

    auto account = mps::account_for(spec, cost_cents);
    if (margin_cents) account.initial_margin_cents = *margin_cents;
    if (maintenance_cents) account.maintenance_margin_cents = *maintenance_cents;
    account.initial_account_cents = account_cents.value_or(account.initial_margin_cents);

    mps::Strategy strategy;
    if (strategy_name == "mps0") {
        auto variant = mps::Mps0Variant::L;
        if (variant_name == "R")
            variant = mps::Mps0Variant::R;
        else if (variant_name != "L")
            throw UsageError("unknown variant: " + variant_name);
        strategy = mps::mps0(chain.prices, spec.tick_value_cents, cost_cents, variant);
    } else if (strategy_name == "mps1") {
        strategy = mps::mps1(chain.prices, account);
    } else if (strategy_name == "mps2") {
        strategy = mps::mps2(chain.prices, account);
    } else {
        throw UsageError("unknown strategy: " + strategy_name);
    }

    auto summary = mps::summarize(strategy, chain.prices, chain.times_s, account);
    std::ostringstream text;
    text << mps::summary_report(ticker.empty() ? spec.symbol : ticker, spec, account,
                                summary);
    if (print_threshold) {
        auto threshold = mps::do_nothing_threshold(chain.prices, spec.tick_value_cents);
        text << "do-nothing cost = " << cents_to_dollars(threshold) << " (" << threshold
             << " cents)\n";
    }
    if (!sweep_spec.empty()) {
        std::vector<std::int64_t> costs;
        for (const auto& field : split(sweep_spec, ',')) costs.push_back(to_i64(field));
        text << "cost_cents,pl_cents,n_trades,total_units\n";
        for (const auto& row :
             mps::cost_sweep(chain.prices, chain.times_s, spec.tick_value_cents, costs)) {
            char buf[128];
            std::snprintf(buf, sizeof buf, "%" PRId64 ",%" PRId64 ",%" PRId64 ",%" PRId64 "\n",
                          row.cost_cents, row.pl_cents, row.n_trades, row.total_units);
            text << buf;
        }
    }
    if (!spectrum_path.empty())
        write_file(spectrum_path, mps::spectrum_csv(strategy, chain.times_s));
    emit(opt.out, text.str());
    return 0;
}

int cmd_ote(const CommonOpts& opt, std::int64_t f_cost_cents,
            std::optional<std::int64_t> t_cost_cents) {
    auto spec = contract_or_throw(opt.contract);
    ote::CostPair costs{f_cost_cents, t_cost_cents.value_or(f_cost_cents)};

    std::vector<ote::OteElement> elements;
    std::size_t n_sessions = 1;
    if (!opt.calendar.empty()) {
        auto series = ticks::parse_time_sales_file(opt.prices, spec);
        auto calendar = ticks::parse_calendar_file(opt.calendar);
        auto index = ticks::segment_sessions(series, calendar);
        n_sessions = index.sessions.size();
        elements = ote::extract_otes(series, index, spec.tick_value_cents, costs);
    } else {
        auto chain = read_chain(opt.prices, spec);
        elements = ote::extract_otes(chain.prices, chain.times_s, spec.tick_value_cents,
                                     costs);
    }

    std::ostringstream text;
    text << elements.size() << " elements over " << n_sessions << " sessions\n";
    auto lattice = ote::pl_lattice(spec.tick_value_cents, costs);
    text << "lattice: n_min " << lattice.n_min << ", pl_min "
         << cents_to_dollars(lattice.pl_min_cents) << ", step "
         << cents_to_dollars(lattice.step_cents) << "\n";
    if (!elements.empty()) {
        auto stats = ote::ote_stats(elements, n_sessions);
        char buf[96];
        std::snprintf(buf, sizeof buf, "birth expectation = %.6g\n",
                      ote::birth_strategy_expectation(elements, spec.tick_value_cents,
                                                      costs) /
                          100.0);
        text << buf;
        std::snprintf(buf, sizeof buf, "mean elements per session = %.6g\n",
                      stats.mean_per_session);
        text << buf;
        std::vector<ote::OteTableRow> profit_rows{{f_cost_cents, stats.profit}};
        std::vector<ote::OteTableRow> duration_rows{{f_cost_cents, stats.duration}};
        text << "profits:\n"
             << ote::ote_table_csv(profit_rows, true) << "durations:\n"
             << ote::ote_table_csv(duration_rows, false);
    }
    emit(opt.out, text.str());
    return 0;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"tick chains, increment families, distribution fits and maximum"
                 " profit strategies"};
    app.require_subcommand(1);
    int rc = 0;

    // parse
    CommonOpts parse_opt;
    bool all_records = false;
    auto* parse_cmd = app.add_subcommand("parse", "parse a Time & Sales file");
    parse_cmd->add_option("--prices", parse_opt.prices, "Time & Sales file")->required();
    parse_cmd->add_option("--contract", parse_opt.contract, "contract symbol");
    parse_cmd->add_option("--calendar", parse_opt.calendar, "trading calendar CSV");
    parse_cmd->add_option("--out", parse_opt.out, "write the normalized records here");
    parse_cmd->add_flag("--all-records", all_records, "keep non-T records");
    parse_cmd->callback([&] { rc = cmd_parse(parse_opt, all_records); });

    // increments
    CommonOpts inc_opt;
    auto* inc_cmd = app.add_subcommand("increments", "a/b/c increment moment table");
    inc_cmd->add_option("--prices", inc_opt.prices, "Time & Sales file")->required();
    inc_cmd->add_option("--contract", inc_opt.contract, "contract symbol");
    inc_cmd->add_option("--calendar", inc_opt.calendar, "trading calendar CSV")->required();
    inc_cmd->add_option("--out", inc_opt.out, "output CSV path");
    inc_cmd->callback([&] { rc = cmd_increments(inc_opt); });

    // conditional
    CommonOpts cond_opt;
    std::string cond_transform = "identity";
    std::int64_t tail_lo_value = 0;
    auto* cond_cmd = app.add_subcommand("conditional", "moments of b conditioned on a");
    cond_cmd->add_option("--prices", cond_opt.prices, "Time & Sales file")->required();
    cond_cmd->add_option("--contract", cond_opt.contract, "contract symbol");
    cond_cmd->add_option("--calendar", cond_opt.calendar, "trading calendar CSV")
        ->required();
    cond_cmd->add_option("--b-transform", cond_transform, "identity|abs|square");
    auto* tail_opt = cond_cmd->add_option("--tail-lo", tail_lo_value,
                                          "pool a >= this into one bucket");
    cond_cmd->add_option("--out", cond_opt.out, "output CSV path");
    cond_cmd->callback([&] {
        std::optional<std::int64_t> tail_lo;
        if (tail_opt->count() > 0) tail_lo = tail_lo_value;
        rc = cmd_conditional(cond_opt, cond_transform, tail_lo);
    });

    // fit
    std::string fit_family, fit_classes, fit_params, fit_out;
    std::vector<std::string> fit_bounds;
    std::vector<double> fit_moments;
    auto* fit_cmd = app.add_subcommand("fit", "fit or evaluate a distribution");
    fit_cmd->add_option("--family", fit_family,
                        "kumaraswamy|riemann|hurwitz|zipf-mandelbrot|extreme-type2")
        ->required();
    fit_cmd->add_option("--classes", fit_classes, "chi^2 classes CSV (lo,hi,count)");
    fit_cmd->add_option("--bounds", fit_bounds, "search box lo:hi, one per parameter");
    fit_cmd->add_option("--params", fit_params, "evaluate fixed params p1,p2,... instead");
    fit_cmd->add_option("--moments", fit_moments,
                        "kumaraswamy target: mean std skew ekurt")
        ->expected(0, 4);
    fit_cmd->add_option("--out", fit_out, "output CSV path");
    fit_cmd->callback([&] {
        rc = cmd_fit(fit_family, fit_classes, fit_bounds, fit_params, fit_moments, fit_out);
    });

    // independence
    CommonOpts ind_opt;
    std::string ind_transform = "abs";
    bool ind_cells = false;
    std::int64_t ind_min_count = 50;
    auto* ind_cmd = app.add_subcommand("independence", "L/I/chi^2 tests of (a, b)");
    ind_cmd->add_option("--prices", ind_opt.prices, "Time & Sales file")->required();
    ind_cmd->add_option("--contract", ind_opt.contract, "contract symbol");
    ind_cmd->add_option("--calendar", ind_opt.calendar, "trading calendar CSV")->required();
    ind_cmd->add_option("--b-transform", ind_transform, "signed|abs");
    ind_cmd->add_flag("--cells", ind_cells, "append the high-count cell dump");
    ind_cmd->add_option("--min-count", ind_min_count, "cell dump threshold");
    ind_cmd->add_option("--out", ind_opt.out, "output CSV path");
    ind_cmd->callback(
        [&] { rc = cmd_independence(ind_opt, ind_transform, ind_cells, ind_min_count); });

    // corrdim
    CommonOpts dim_opt;
    std::string dim_series, dim_algorithm = "boxed";
    std::size_t dim_m = 2, dim_grid = 40, dim_window = 5;
    auto* dim_cmd = app.add_subcommand("corrdim", "correlation dimension estimate");
    dim_cmd->add_option("--series", dim_series, "scalar series file (last CSV field)");
    dim_cmd->add_option("--prices", dim_opt.prices, "Time & Sales file");
    dim_cmd->add_option("--contract", dim_opt.contract, "contract symbol");
    dim_cmd->add_option("--embedding", dim_m, "embedding dimension m");
    dim_cmd->add_option("--algorithm", dim_algorithm, "naive|boxed");
    dim_cmd->add_option("--grid", dim_grid, "radius grid size");
    dim_cmd->add_option("--window", dim_window, "slope window length");
    dim_cmd->add_option("--out", dim_opt.out, "write the ln-ln curve here");
    dim_cmd->callback([&] {
        rc = cmd_corrdim(dim_series, dim_opt, dim_m, dim_algorithm, dim_grid, dim_window);
    });

    // simulate
    std::size_t sim_n = 0;
    double sim_price0 = 100.0, sim_drift = 0.0, sim_sigma = 1.0, sim_scale = 1.0;
    std::uint64_t sim_seed = chaos::Lcg64::kDefaultSeed;
    std::string sim_out;
    auto* sim_cmd = app.add_subcommand("simulate", "arithmetic Brownian tick chain");
    sim_cmd->add_option("--n", sim_n, "number of points")->required();
    sim_cmd->add_option("--price0", sim_price0, "starting price");
    sim_cmd->add_option("--drift", sim_drift, "per-step drift");
    sim_cmd->add_option("--sigma", sim_sigma, "per-step volatility");
    sim_cmd->add_option("--time-scale", sim_scale, "seconds per step");
    sim_cmd->add_option("--seed", sim_seed, "RNG seed");
    sim_cmd->add_option("--out", sim_out, "output CSV path");
    sim_cmd->callback([&] {
        rc = cmd_simulate(sim_n, sim_price0, sim_drift, sim_sigma, sim_scale, sim_seed,
                          sim_out);
    });

    // mps
    CommonOpts mps_opt;
    std::string mps_ticker, mps_strategy = "mps0", mps_variant = "L";
    std::string mps_spectrum, mps_sweep;
    double mps_cost_dollars = 0.0, mps_account_dollars = 0.0, mps_margin_dollars = 0.0,
           mps_maintenance_dollars = 0.0;
    std::int64_t mps_cost_cents_value = 0;
    bool mps_threshold = false;
    auto* mps_cmd = app.add_subcommand("mps", "maximum profit strategy report");
    mps_cmd->add_option("--prices", mps_opt.prices, "price chain CSV or Time & Sales file")
        ->required();
    mps_cmd->add_option("--contract", mps_opt.contract, "contract symbol");
    mps_cmd->add_option("--ticker", mps_ticker, "report label (default: contract)");
    auto* cost_dollar_opt =
        mps_cmd->add_option("--cost", mps_cost_dollars, "cost per contract, dollars");
    auto* cost_cent_opt = mps_cmd->add_option("--cost-cents", mps_cost_cents_value,
                                              "cost per contract, cents");
    cost_dollar_opt->excludes(cost_cent_opt);
    mps_cmd->add_option("--strategy", mps_strategy, "mps0|mps1|mps2");
    mps_cmd->add_option("--variant", mps_variant, "mps0 tie-break: L|R");
    auto* acct_opt =
        mps_cmd->add_option("--account", mps_account_dollars, "initial account, dollars");
    auto* margin_opt =
        mps_cmd->add_option("--margin", mps_margin_dollars, "initial margin, dollars");
    auto* maint_opt = mps_cmd->add_option("--maintenance", mps_maintenance_dollars,
                                          "maintenance margin, dollars");
    mps_cmd->add_flag("--threshold", mps_threshold, "print the do-nothing cost");
    mps_cmd->add_option("--sweep", mps_sweep, "cost sweep c1,c2,... in cents");
    mps_cmd->add_option("--spectrum", mps_spectrum, "write the action spectrum here");
    mps_cmd->add_option("--out", mps_opt.out, "output path");
    mps_cmd->callback([&] {
        std::int64_t cost = cost_cent_opt->count() > 0 ? mps_cost_cents_value
                            : cost_dollar_opt->count() > 0
                                ? dollars_to_cents(mps_cost_dollars)
                                : 0;
        std::optional<std::int64_t> account, margin, maintenance;
        if (acct_opt->count() > 0) account = dollars_to_cents(mps_account_dollars);
        if (margin_opt->count() > 0) margin = dollars_to_cents(mps_margin_dollars);
        if (maint_opt->count() > 0)
            maintenance = dollars_to_cents(mps_maintenance_dollars);
        rc = cmd_mps(mps_opt, mps_ticker, cost, mps_strategy, mps_variant, account, margin,
                     maintenance, mps_spectrum, mps_threshold, mps_sweep);
    });

    // ote
    CommonOpts ote_opt;
    double ote_f_dollars = 0.0, ote_t_dollars = 0.0;
    std::int64_t ote_f_cents = 0, ote_t_cents = 0;
    auto* ote_cmd = app.add_subcommand("ote", "optimal trading elements");
    ote_cmd->add_option("--prices", ote_opt.prices, "price chain CSV or Time & Sales file")
        ->required();
    ote_cmd->add_option("--contract", ote_opt.contract, "contract symbol");
    ote_cmd->add_option("--calendar", ote_opt.calendar, "trading calendar CSV");
    auto* f_dollar_opt =
        ote_cmd->add_option("--f-cost", ote_f_dollars, "filtration cost, dollars");
    auto* f_cent_opt =
        ote_cmd->add_option("--f-cost-cents", ote_f_cents, "filtration cost, cents");
    f_dollar_opt->excludes(f_cent_opt);
    auto* t_dollar_opt =
        ote_cmd->add_option("--t-cost", ote_t_dollars, "actual cost, dollars");
    auto* t_cent_opt =
        ote_cmd->add_option("--t-cost-cents", ote_t_cents, "actual cost, cents");
    t_dollar_opt->excludes(t_cent_opt);
    ote_cmd->add_option("--out", ote_opt.out, "output path");
    ote_cmd->callback([&] {
        if (f_dollar_opt->count() == 0 && f_cent_opt->count() == 0)
            throw UsageError("--f-cost or --f-cost-cents is required");
        std::int64_t f = f_cent_opt->count() > 0 ? ote_f_cents
                                                 : dollars_to_cents(ote_f_dollars);
        std::optional<std::int64_t> t;
        if (t_cent_opt->count() > 0)
            t = ote_t_cents;
        else if (t_dollar_opt->count() > 0)
            t = dollars_to_cents(ote_t_dollars);
        rc = cmd_ote(ote_opt, f, t);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rc;
}

}  // namespace mpslab::cli
