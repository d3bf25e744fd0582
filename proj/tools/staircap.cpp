// Command-line front end: capacity tables, embedding-function lower bounds,
// obstruction curves, Cremona reduction, class searches, staircase families,
// blocking intervals, and deterministic CSV/SVG emission.
//
// Exit codes: 0 success, 1 usage/IO error, 2 mathematical domain error.

#include "staircap/cremona.hpp"
#include "staircap/echcap.hpp"
#include "staircap/staircase.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

using namespace staircap;
using ordered_json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Capacity file round-trip

ordered_json capacity_to_json(const CapacityTable& t) {
    ordered_json j;
    j["b"] = rational_str(t.b);
    j["scale"] = rational_str(t.scale);
    j["count"] = t.caps.size() - 1;
    ordered_json caps = ordered_json::array();
    for (const Rational& c : t.caps) caps.push_back(rational_str(c));
    j["caps"] = std::move(caps);
    return j;
}

CapacityTable capacity_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open capacity file: " + path);
    ordered_json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw UsageError("bad capacity file " + path + ": " + e.what());
    }
    CapacityTable t;
    t.b = parse_rational(j.at("b").get<std::string>());
    t.scale = parse_rational(j.at("scale").get<std::string>());
    size_t count = j.at("count").get<size_t>();
    for (const auto& c : j.at("caps")) t.caps.push_back(parse_rational(c.get<std::string>()));
    if (t.caps.size() != count + 1) throw UsageError("capacity file count mismatch: " + path);
    return t;
}

// ---------------------------------------------------------------------------
// CSV series

struct CurveSeries {
    std::string label;
    std::vector<std::pair<std::string, std::string>> points;  // (z, value), value may be empty
};

void emit_curve_csv(const std::vector<CurveSeries>& series, const std::string& path) {
    if (series.empty()) throw UsageError("no series to write");
    for (const CurveSeries& s : series)
        if (s.points.size() != series[0].points.size())
            throw UsageError("series are not aligned on the same samples");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write " + path);
    out << "z";
    for (const CurveSeries& s : series) out << "," << s.label;
    out << "\n";
    for (size_t i = 0; i < series[0].points.size(); ++i) {
        out << series[0].points[i].first;
        for (const CurveSeries& s : series) out << "," << s.points[i].second;
        out << "\n";
    }
}

std::vector<CurveSeries> parse_curve_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open CSV: " + path);
    std::string line;
    if (!std::getline(in, line)) throw UsageError("empty CSV: " + path);
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cur;
        for (char ch : s) {
            if (ch == ',') {
                out.push_back(cur);
                cur.clear();
            } else if (ch != '\r') {
                cur += ch;
            }
        }
        out.push_back(cur);
        return out;
    };
    std::vector<std::string> header = split(line);
    if (header.size() < 2 || header[0] != "z") throw UsageError("bad CSV header in " + path);
    std::vector<CurveSeries> series(header.size() - 1);
    for (size_t i = 1; i < header.size(); ++i) series[i - 1].label = header[i];
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> cells = split(line);
        if (cells.size() != header.size()) throw UsageError("ragged CSV row in " + path);
        for (size_t i = 1; i < cells.size(); ++i)
            series[i - 1].points.emplace_back(cells[0], cells[i]);
    }
    return series;
}

// ---------------------------------------------------------------------------
// SVG

std::string palette_color(const std::string& label, size_t fallbackIndex) {
    if (label == "lower-bound") return "#00008b";  // dark blue
    if (label == "volume") return "#ff8c00";       // orange
    if (label == "acc-curve") return "#228b22";    // green
    static const char* obstruction[] = {"#8b4513", "#cc0000", "#800080"};  // brown/red/purple
    return obstruction[fallbackIndex % 3];
}

std::string fmt2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

void emit_svg(const std::vector<std::string>& csvPaths, const std::string& outPath) {
    std::vector<CurveSeries> series;
    for (const std::string& p : csvPaths)
        for (CurveSeries& s : parse_curve_csv(p)) series.push_back(std::move(s));
    bool any = false;
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    std::vector<std::vector<std::pair<double, double>>> numeric(series.size());
    for (size_t i = 0; i < series.size(); ++i) {
        for (const auto& [zs, vs] : series[i].points) {
            if (vs.empty()) continue;
            double x = std::stod(zs), y = std::stod(vs);
            if (!any) {
                xmin = xmax = x;
                ymin = ymax = y;
                any = true;
            }
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
            numeric[i].emplace_back(x, y);
        }
    }
    if (!any) throw UsageError("no data points in the given CSVs");
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    const double W = 800, H = 600, ML = 70, MR = 170, MT = 20, MB = 50;
    auto px = [&](double x) { return ML + (x - xmin) / (xmax - xmin) * (W - ML - MR); };
    auto py = [&](double y) { return H - MB - (y - ymin) / (ymax - ymin) * (H - MT - MB); };
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"600\" "
           "viewBox=\"0 0 800 600\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    // axes
    svg << "<line x1=\"" << fmt2(ML) << "\" y1=\"" << fmt2(H - MB) << "\" x2=\"" << fmt2(W - MR)
        << "\" y2=\"" << fmt2(H - MB) << "\" stroke=\"black\"/>\n";
    svg << "<line x1=\"" << fmt2(ML) << "\" y1=\"" << fmt2(MT) << "\" x2=\"" << fmt2(ML)
        << "\" y2=\"" << fmt2(H - MB) << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double x = xmin + (xmax - xmin) * i / 5, y = ymin + (ymax - ymin) * i / 5;
        svg << "<line x1=\"" << fmt2(px(x)) << "\" y1=\"" << fmt2(H - MB) << "\" x2=\""
            << fmt2(px(x)) << "\" y2=\"" << fmt2(H - MB + 5) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt2(px(x)) << "\" y=\"" << fmt2(H - MB + 20)
            << "\" font-size=\"12\" text-anchor=\"middle\">" << fmt6(x) << "</text>\n";
        svg << "<line x1=\"" << fmt2(ML - 5) << "\" y1=\"" << fmt2(py(y)) << "\" x2=\"" << fmt2(ML)
            << "\" y2=\"" << fmt2(py(y)) << "\" stroke=\"black\"/>\n";
        svg << "<text x=\"" << fmt2(ML - 8) << "\" y=\"" << fmt2(py(y) + 4)
            << "\" font-size=\"12\" text-anchor=\"end\">" << fmt6(y) << "</text>\n";
    }
    size_t extra = 0;
    for (size_t i = 0; i < series.size(); ++i) {
        const std::string& label = series[i].label;
        bool reserved =
            label == "lower-bound" || label == "volume" || label == "acc-curve";
        std::string color = palette_color(label, reserved ? 0 : extra);
        if (!reserved) ++extra;
        if (!numeric[i].empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
            for (size_t j = 0; j < numeric[i].size(); ++j) {
                if (j) svg << " ";
                svg << fmt2(px(numeric[i][j].first)) << "," << fmt2(py(numeric[i][j].second));
            }
            svg << "\"/>\n";
        }
        double ly = MT + 20 + 18 * static_cast<double>(i);
        svg << "<line x1=\"" << fmt2(W - MR + 10) << "\" y1=\"" << fmt2(ly) << "\" x2=\""
            << fmt2(W - MR + 40) << "\" y2=\"" << fmt2(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << fmt2(W - MR + 46) << "\" y=\"" << fmt2(ly + 4)
            << "\" font-size=\"12\">" << label << "</text>\n";
    }
    svg << "</svg>\n";
    std::ofstream out(outPath, std::ios::binary);
    if (!out) throw UsageError("cannot write " + outPath);
    out << svg.str();
}

// ---------------------------------------------------------------------------
// Helpers

QuasiPerfectClass parse_quasi_perfect_literal(const std::string& text) {
    auto semi = text.find(';');
    if (semi == std::string::npos)
        throw DomainError("class literal needs ';': '" + text + "'");
    std::string head = text.substr(0, semi);
    auto comma = head.find(',');
    if (comma == std::string::npos)
        throw DomainError("class literal needs 'd,m': '" + text + "'");
    Int d(head.substr(0, comma)), m(head.substr(comma + 1));
    Rational z = parse_rational(text.substr(semi + 1));
    return make_quasi_perfect(d, m, num(z), den(z));
}

std::string state_str(const ReductionState& s) {
    std::string out = "(" + s.degree.str() + ";";
    for (size_t i = 0; i < s.entries.size(); ++i)
        out += (i ? "," : " ") + s.entries[i].str();
    out += ")";
    return out;
}

std::string class_str(const QuasiPerfectClass& c) {
    return "(" + c.d.str() + "," + c.m.str() + ";" + rational_str(c.center()) + ")";
}

// Grid z = zmin, zmin+step, ... capped at zmax (inclusive).
std::vector<Rational> sample_grid(const Rational& zmin, const Rational& zmax,
                                  const Rational& step) {
    if (step <= 0) throw UsageError("--step must be positive");
    if (zmax < zmin) throw UsageError("--zmax must be >= --zmin");
    std::vector<Rational> out;
    for (Rational z = zmin; z <= zmax; z += step) out.push_back(z);
    return out;
}

template <typename Fn>
void parallel_for(size_t count, Fn fn) {
    unsigned nThreads = std::min<size_t>(thread_count(), count ? count : 1);
    if (nThreads <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<size_t> next{0};
    for (unsigned t = 0; t < nThreads; ++t)
        pool.emplace_back([&]() {
            for (size_t i = next++; i < count; i = next++) fn(i);
        });
    for (std::thread& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// Subcommands

int cmd_caps(const Rational& b, const Rational& scale, long long count,
             const std::string& outPath) {
    PathTable table(2 * count + 1);
    CapacityTable caps = toric_caps(table, b, scale, count);
    ordered_json j = capacity_to_json(caps);
    if (outPath.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(outPath, std::ios::binary);
        if (!out) throw UsageError("cannot write " + outPath);
        out << j.dump(2) << "\n";
    }
    return 0;
}

int cmd_embed_lower(const std::string& capsPath, const Rational& zmin, const Rational& zmax,
                    const Rational& step, const std::string& outPath, bool withVolume,
                    bool withAcc) {
    CapacityTable table = capacity_from_file(capsPath);
    long long K = static_cast<long long>(table.caps.size()) - 1;
    std::vector<Rational> grid = sample_grid(zmin, zmax, step);
    if (zmin < 1) throw UsageError("--zmin must be >= 1");
    Branch branch = (table.b < Rational(1, 3)) ? Branch::L : Branch::U;
    std::vector<std::string> lower(grid.size()), volume(grid.size()), accCurve(grid.size());
    parallel_for(grid.size(), [&](size_t i) {
        const Rational& z = grid[i];
        lower[i] = decimal15(to_real(c_lower(table.b, Surd(z), table, K).value));
        if (withVolume)
            volume[i] = decimal15(sqrt(to_real(volume_sq(Surd(table.b), Surd(z)))));
        if (withAcc) {
            try {
                Surd bz = acc_inv(z, branch);
                Surd v = (Surd(Rational(1)) + Surd(z)) / (Surd(Rational(3)) - bz);
                accCurve[i] = decimal15(to_real(v));
            } catch (const OutOfBranchRange&) {
                accCurve[i].clear();  // outside the curve's domain
            }
        }
    });
    std::vector<CurveSeries> series;
    CurveSeries main{"lower-bound", {}};
    for (size_t i = 0; i < grid.size(); ++i)
        main.points.emplace_back(decimal15(grid[i]), lower[i]);
    series.push_back(std::move(main));
    if (withVolume) {
        CurveSeries s{"volume", {}};
        for (size_t i = 0; i < grid.size(); ++i)
            s.points.emplace_back(decimal15(grid[i]), volume[i]);
        series.push_back(std::move(s));
    }
    if (withAcc) {
        CurveSeries s{"acc-curve", {}};
        for (size_t i = 0; i < grid.size(); ++i)
            s.points.emplace_back(decimal15(grid[i]), accCurve[i]);
        series.push_back(std::move(s));
    }
    emit_curve_csv(series, outPath);
    return 0;
}

int cmd_obstruction(const std::string& classSpec, long long k, const Rational& b,
                    const Rational& zmin, const Rational& zmax, const Rational& step,
                    const std::string& outPath) {
    if (classSpec.empty() == (k < 0))
        throw UsageError("exactly one of --class and --k is required");
    std::vector<Rational> grid = sample_grid(zmin, zmax, step);
    CurveSeries s;
    if (!classSpec.empty()) {
        ExClass c = parse_class_literal(classSpec);
        s.label = "mu(" + c.d.str() + "," + c.m.str() + ")";
        for (const Rational& z : grid)
            s.points.emplace_back(decimal15(z), decimal15(mu_at(c, b, z)));
    } else {
        s.label = "ratio-k" + std::to_string(k);
        Rational ck = toric_cap_single(b, 1, k);
        for (const Rational& z : grid) {
            Rational nk = ellipsoid_cap_single(z, k);
            s.points.emplace_back(decimal15(z), decimal15(nk / ck));
        }
    }
    emit_curve_csv({s}, outPath);
    return 0;
}

int cmd_reduce(const std::string& classSpec, bool log) {
    ExClass c = parse_class_literal(classSpec);
    ReduceResult r = reduce(c);
    if (log)
        for (const ReductionState& s : r.moveLog) std::cout << state_str(s) << "\n";
    if (r.outcome == ReduceOutcome::Exceptional) {
        std::cout << "EXCEPTIONAL\n";
    } else {
        std::cout << "FAKE";
        if (!r.reason.empty()) std::cout << " (" << r.reason << ")";
        std::cout << "\n";
    }
    return 0;
}

int cmd_find_classes(long long k, const std::string& cfLiteral, const Rational& z1,
                     const Rational& z2, long long qmin, long long qmax) {
    int modes = (k >= 0) + (!cfLiteral.empty()) + (z1 != 0 || z2 != 0);
    if (modes != 1) throw UsageError("use exactly one of --k, --cf, --range");
    auto printClass = [](const Int& d, const Int& m, const Int& p, const Int& q) {
        std::cout << d.str() << "," << m.str() << ";" << p.str();
        if (q != 1) std::cout << "/" << q.str();
        std::cout << "\n";
    };
    if (k >= 0) {
        for (auto [d, m] : find_dm_from_k(k))
            for (auto [p, q] : find_pq_from_dm(d, m)) printClass(d, m, p, q);
    } else if (!cfLiteral.empty()) {
        CfLiteral lit = parse_cf_literal(cfLiteral);
        if (!lit.cycle.empty()) throw UsageError("--cf must be a finite continued fraction");
        Rational z = cf_to_rational(cf_canonicalize(ContinuedFraction{lit.head}));
        for (auto [d, m] : find_dm_from_center(num(z), den(z)))
            printClass(d, m, num(z), den(z));
    } else {
        for (const FoundClass& c : classes_with_cf_in_range(z1, z2, qmin, qmax))
            printClass(c.d, c.m, c.p, c.q);
    }
    return 0;
}

std::pair<Int, Int> family_rs(const StairFamilySpec& spec) {
    if (spec.family == Family::U)
        return spec.dir == Direction::lower ? std::pair<Int, Int>{1, 1} : std::pair<Int, Int>{1, 2};
    if (spec.family == Family::L)
        return spec.dir == Direction::lower ? std::pair<Int, Int>{7, 10}
                                            : std::pair<Int, Int>{3, 10};
    return spec.dir == Direction::lower ? std::pair<Int, Int>{1, 2} : std::pair<Int, Int>{1, 3};
}

int cmd_staircase(const std::string& specText, long long kMax, bool verify) {
    StairFamilySpec spec = parse_family_spec(specText);
    PrestairFamily fam = prestaircase_generate(spec, kMax);
    for (const PrestairEntry& e : fam.entries) {
        std::cout << "k=" << e.k << ": (" << e.d.str() << "," << e.m.str() << ";" << e.p.str()
                  << "/" << e.q.str() << ")";
        if (e.formal) std::cout << " [formal]";
        std::cout << "\n";
    }
    PrestairLimits lim = prestaircase_limits(spec);
    std::cout << "lambda = " << surd_str(lim.lambda) << "\n";
    std::cout << "b_inf = " << surd_str(lim.bInf) << " ~ " << decimal15(to_real(lim.bInf)) << "\n";
    std::cout << "a_inf = " << surd_str(lim.aInf) << " ~ " << decimal15(to_real(lim.aInf)) << "\n";
    if (!verify) return 0;
    bool ok = true;
    Int s2 = sigma_of(spec.n) + 2;
    for (const QuasiPerfectClass& c : fam.classes)
        if (!check_diophantine(c.to_exclass())) {
            std::cout << "FAIL diophantine at " << class_str(c) << "\n";
            ok = false;
        }
    for (size_t i = 0; i + 2 < fam.entries.size(); ++i) {
        const PrestairEntry &a = fam.entries[i], &b2 = fam.entries[i + 1], &c = fam.entries[i + 2];
        if (c.d != s2 * b2.d - a.d || c.m != s2 * b2.m - a.m || c.p != s2 * b2.p - a.p ||
            c.q != s2 * b2.q - a.q) {
            std::cout << "FAIL recursion at k=" << c.k << "\n";
            ok = false;
        }
    }
    auto [r, s] = family_rs(spec);
    Dmin1Result dm = dmin1_check(spec, r, s);
    if (!dm.ok) {
        std::cout << "FAIL limit-separation inequality with r/s = " << r.str() << "/" << s.str()
                  << "\n";
        ok = false;
    }
    for (const QuasiPerfectClass& c : fam.classes)
        if (reduce(c.to_exclass()).outcome != ReduceOutcome::Exceptional) {
            std::cout << "FAIL Cremona reduction at " << class_str(c) << "\n";
            ok = false;
        }
    std::cout << (ok ? "verify: ok" : "verify: FAILED") << "\n";
    return ok ? 0 : 2;
}

int cmd_blocking(const std::string& classSpec, const std::string& familyName, long long n) {
    QuasiPerfectClass c{0, 0, 0, 0};
    bool haveClass = !classSpec.empty();
    if (haveClass == !familyName.empty())
        throw UsageError("use exactly one of --class and --family");
    if (haveClass) {
        c = parse_quasi_perfect_literal(classSpec);
    } else {
        Family f = familyName == "U"   ? Family::U
                   : familyName == "L" ? Family::L
                   : familyName == "E" ? Family::E
                                       : throw UsageError("--family must be U, L or E");
        c = blocking_class(f, n);
    }
    BlockingInterval bi = blocking_interval_generic(c);
    std::cout << "class " << class_str(c) << "\n";
    std::cout << "J = (" << surd_str(bi.bLow) << ", " << surd_str(bi.bHigh) << ") ~ ("
              << decimal15(to_real(bi.bLow)) << ", " << decimal15(to_real(bi.bHigh)) << ")\n";
    std::cout << "I = (" << surd_str(bi.zLow) << ", " << surd_str(bi.zHigh) << ") ~ ("
              << decimal15(to_real(bi.zLow)) << ", " << decimal15(to_real(bi.zHigh)) << ")\n";
    std::cout << "exact = " << (bi.exact ? "true" : "false") << "\n";
    return 0;
}

int cmd_acc(const Rational& b) {
    AccResult r = acc(Surd(b));
    if (r.exact)
        std::cout << surd_str(r.value) << " ~ " << decimal15(r.approx) << "\n";
    else
        std::cout << "~ " << decimal15(r.approx) << " (inexact)\n";
    return 0;
}

int cmd_acc_inv(const Rational& z, const std::string& branchName) {
    Branch br;
    if (branchName == "L")
        br = Branch::L;
    else if (branchName == "U")
        br = Branch::U;
    else
        throw UsageError("--branch must be L or U");
    std::cout << surd_str(acc_inv(z, br)) << "\n";
    return 0;
}

int cmd_min_obstructing_k(const Rational& b, const std::string& capsPath) {
    CapacityTable table = capacity_from_file(capsPath);
    if (table.b != b) throw UsageError("capacity file was built for b = " + rational_str(table.b));
    long long K = static_cast<long long>(table.caps.size()) - 1;
    auto k = min_obstructing_index(b, table, K);
    if (k)
        std::cout << *k << "\n";
    else
        std::cout << "none (k <= " << K << ")\n";
    return 0;
}

int cmd_verify_b15(long long tMax) {
    std::vector<Rational> samples{Rational(601, 100), Rational(121, 20), Rational(6049, 1000)};
    B15Report rep = verify_b15(tMax, samples);
    std::cout << "checks run: " << rep.checksRun << "\n";
    std::cout << "index calibration offset: " << rep.calibrationOffset << "\n";
    for (const std::string& f : rep.failures) std::cout << "FAIL " << f << "\n";
    std::cout << (rep.ok() ? "all checks pass" : "FAILED") << "\n";
    return rep.ok() ? 0 : 2;
}

int cmd_plot(const std::string& inList, const std::string& outPath) {
    std::vector<std::string> paths;
    std::string cur;
    for (char ch : inList) {
        if (ch == ',') {
            paths.push_back(cur);
            cur.clear();
        } else {
            cur += ch;
        }
    }
    paths.push_back(cur);
    emit_svg(paths, outPath);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ellipsoid-embedding staircase toolkit"};
    app.require_subcommand(1);

    std::string bStr = "0", scaleStr = "1", outPath, capsPath, classSpec, cfLiteral;
    std::string specText, familyName, branchName, inList;
    std::string zminStr, zmaxStr, stepStr = "1/100", z1Str = "0", z2Str = "0", zStr;
    long long count = 0, kArg = -1, kMax = 3, qmin = 1, qmax = 10, nArg = 0, tMax = 300;
    bool withVolume = false, withAcc = false, logMoves = false, verify = false;

    auto* caps = app.add_subcommand("caps", "build a capacity table");
    caps->add_option("--b", bStr, "b as p/q")->required();
    caps->add_option("--scale", scaleStr, "scale factor p/q");
    caps->add_option("--count", count, "number of capacities K (emits c_0..c_K)")->required();
    caps->add_option("--out", outPath, "output JSON path (default: stdout)");

    auto* embed = app.add_subcommand("embed-lower", "lower bound of the embedding function");
    embed->add_option("--caps", capsPath, "capacity table JSON")->required();
    embed->add_option("--zmin", zminStr)->required();
    embed->add_option("--zmax", zmaxStr)->required();
    embed->add_option("--step", stepStr);
    embed->add_option("--out", outPath, "output CSV path")->required();
    embed->add_flag("--with-volume", withVolume);
    embed->add_flag("--with-acc-curve", withAcc);

    auto* obstr = app.add_subcommand("obstruction", "single obstruction curve");
    obstr->add_option("--class", classSpec, "class literal");
    obstr->add_option("--k", kArg, "capacity index");
    obstr->add_option("--b", bStr)->required();
    obstr->add_option("--zmin", zminStr)->required();
    obstr->add_option("--zmax", zmaxStr)->required();
    obstr->add_option("--step", stepStr);
    obstr->add_option("--out", outPath)->required();

    auto* red = app.add_subcommand("reduce", "Cremona reduction verdict");
    red->add_option("--class", classSpec)->required();
    red->add_flag("--log", logMoves, "print every reduction state");

    auto* find = app.add_subcommand("find-classes", "search for quasi-perfect classes");
    std::vector<std::string> rangeVals;
    find->add_option("--k", kArg, "by capacity index");
    find->add_option("--cf", cfLiteral, "by center continued fraction");
    find->add_option("--range", rangeVals, "center range Z1 Z2")->expected(2);
    find->add_option("--qmin", qmin);
    find->add_option("--qmax", qmax);

    auto* stair = app.add_subcommand("staircase", "generate a pre-staircase family");
    stair->add_option("--spec", specText, "family spec F:dir:n:ending")->required();
    stair->add_option("--kmax", kMax);
    stair->add_flag("--verify", verify);

    auto* block = app.add_subcommand("blocking", "blocked interval of a class");
    block->add_option("--class", classSpec, "quasi-perfect literal d,m;p/q");
    block->add_option("--family", familyName, "U, L or E");
    block->add_option("--n", nArg);

    auto* accCmd = app.add_subcommand("acc", "accumulation point acc(b)");
    accCmd->add_option("--b", bStr)->required();

    auto* accInv = app.add_subcommand("acc-inv", "inverse of acc on a branch");
    accInv->add_option("--z", zStr)->required();
    accInv->add_option("--branch", branchName, "L or U")->required();

    auto* minK = app.add_subcommand("min-obstructing-k", "smallest obstructing index at acc(b)");
    minK->add_option("--b", bStr)->required();
    minK->add_option("--caps", capsPath)->required();

    auto* vb15 = app.add_subcommand("verify-b15", "b = 1/5 counting verification");
    vb15->add_option("--tmax", tMax);

    auto* plot = app.add_subcommand("plot", "render CSV curves as SVG");
    plot->add_option("--in", inList, "comma-separated CSV paths")->required();
    plot->add_option("--out", outPath, "output SVG path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (caps->parsed())
            return cmd_caps(parse_rational(bStr), parse_rational(scaleStr), count, outPath);
        if (embed->parsed())
            return cmd_embed_lower(capsPath, parse_rational(zminStr), parse_rational(zmaxStr),
                                   parse_rational(stepStr), outPath, withVolume, withAcc);
        if (obstr->parsed())
            return cmd_obstruction(classSpec, kArg, parse_rational(bStr), parse_rational(zminStr),
                                   parse_rational(zmaxStr), parse_rational(stepStr), outPath);
        if (red->parsed()) return cmd_reduce(classSpec, logMoves);
        if (find->parsed()) {
            if (!rangeVals.empty()) {
                z1Str = rangeVals[0];
                z2Str = rangeVals[1];
            }
            return cmd_find_classes(kArg, cfLiteral, parse_rational(z1Str), parse_rational(z2Str),
                                    qmin, qmax);
        }
        if (stair->parsed()) return cmd_staircase(specText, kMax, verify);
        if (block->parsed()) return cmd_blocking(classSpec, familyName, nArg);
        if (accCmd->parsed()) return cmd_acc(parse_rational(bStr));
        if (accInv->parsed()) return cmd_acc_inv(parse_rational(zStr), branchName);
        if (minK->parsed()) return cmd_min_obstructing_k(parse_rational(bStr), capsPath);
        if (vb15->parsed()) return cmd_verify_b15(tMax);
        if (plot->parsed()) return cmd_plot(inList, outPath);
        std::cerr << "no subcommand\n";
        return 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const MathDomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
