#include "uniadd/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <thread>

#include "uniadd/acceptance.hpp"
#include "uniadd/empirical.hpp"
#include "uniadd/expsum.hpp"
#include "uniadd/report_io.hpp"
#include "uniadd/vset.hpp"

namespace uniadd {

namespace {

void write_out(const std::string& payload, const std::string& path) {
    if (path.empty()) {
        std::cout << payload;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw resource_error("cannot open output file '" + path + "'");
    out << payload;
    if (!out) throw resource_error("write failure on '" + path + "'");
}

int default_threads() {
    unsigned n = std::thread::hardware_concurrency();
    return n == 0 ? 1 : static_cast<int>(n);
}

}  // namespace

int cli_run(int argc, const char* const* argv) {
    CLI::App app{"polynomially-defined additive functions: classifier, exponential sums, "
                 "V-set counts and sieve experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string poly_text;
    std::string policy_name = "complete";
    std::string output_path;
    std::string format;
    int threads = default_threads();
    app.add_option("--output", output_path, "write the report to a file instead of stdout");
    app.add_option("--threads", threads, "worker threads for sieves and scans");

    // classify
    auto* classify = app.add_subcommand("classify", "membership of q in S_f");
    std::uint64_t q = 1;
    classify->add_option("--poly", poly_text, "ascending coefficients a0,a1,...,ad")
        ->required();
    classify->add_option("--policy", policy_name, "complete|strong|prime-power|custom:...");
    classify->add_option("--q", q, "modulus")->required();

    // sf-scan
    auto* sfscan = app.add_subcommand("sf-scan", "classify all q <= q-max, cross-checked");
    std::uint64_t q_max = 50;
    sfscan->add_option("--poly", poly_text)->required();
    sfscan->add_option("--policy", policy_name);
    sfscan->add_option("--q-max", q_max, "scan bound")->required();
    sfscan->add_option("--format", format, "csv|json (default csv)");

    // expsum
    auto* expsum = app.add_subcommand("expsum", "one exponential sum with all bounds");
    std::uint64_t ell = 2;
    int k = 1;
    std::int64_t r = 1;
    expsum->add_option("--poly", poly_text)->required();
    expsum->add_option("--ell", ell, "prime")->required();
    expsum->add_option("--k", k, "exponent of the modulus ell^k")->required();
    expsum->add_option("--r", r, "character index");

    // expsum-scan
    auto* escan = app.add_subcommand("expsum-scan", "bound scan over a prime-power grid");
    std::uint64_t ell_max = 47;
    std::uint64_t pk_cap = 1'000'000;
    escan->add_option("--poly", poly_text)->required();
    escan->add_option("--ell-max", ell_max, "largest prime");
    escan->add_option("--pk-cap", pk_cap, "largest modulus ell^k");
    escan->add_option("--format", format, "csv|json (default csv)");

    // vset
    auto* vset = app.add_subcommand("vset", "count V_{F,q,J}(w) for all w");
    unsigned J = 1;
    vset->add_option("--poly", poly_text)->required();
    vset->add_option("--q", q)->required();
    vset->add_option("--J", J, "tuple length")->required();

    // vset-diagnostics
    auto* vdiag = app.add_subcommand("vset-diagnostics",
                                     "V-set report with spectra, eta, ell0, xi");
    vdiag->add_option("--poly", poly_text)->required();
    vdiag->add_option("--q", q)->required();
    vdiag->add_option("--J", J)->required();

    // distribution
    auto* dist = app.add_subcommand("distribution", "histogram of f(n) mod q for n <= x");
    std::uint64_t x = 1000;
    double K = 0;  // 0 = unconstrained
    dist->add_option("--poly", poly_text)->required();
    dist->add_option("--policy", policy_name);
    dist->add_option("--q", q)->required();
    dist->add_option("--x", x)->required();
    dist->add_option("--K", K, "require q <= (log x)^K");
    dist->add_option("--format", format, "csv|json (default csv)");

    // convenient
    auto* conv = app.add_subcommand("convenient",
                                    "convenient-number parameters and decompositions");
    double epsilon = 1.0;
    std::int64_t j_override = -1;
    std::uint64_t single_n = 0;
    conv->add_option("--x", x)->required();
    conv->add_option("--epsilon", epsilon, "epsilon in (0,1]");
    conv->add_option("--J", j_override, "override J (default floor(lnlnln x))");
    conv->add_option("--n", single_n, "classify a single n");
    conv->add_option("--poly", poly_text, "with --q: conditional class counts");
    conv->add_option("--policy", policy_name);
    conv->add_option("--q", q);

    // overrep
    auto* over = app.add_subcommand("overrep", "overrepresentation of 1 mod q1^d");
    int d = 2;
    std::uint64_t q1 = 32;
    over->add_option("--d", d, "degree")->required();
    over->add_option("--q1", q1, "base modulus")->required();
    over->add_option("--x", x)->required();

    // accept
    auto* accept = app.add_subcommand("accept", "run the acceptance criteria");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*classify) {
            Polynomial F = Polynomial::parse(poly_text);
            ExtensionPolicy policy = ExtensionPolicy::parse(policy_name);
            write_out(io::classification_json(F, delange_classify(F, policy, q),
                                              prop21_classify(F, policy, q)),
                      output_path);
        } else if (*sfscan) {
            Polynomial F = Polynomial::parse(poly_text);
            ExtensionPolicy policy = ExtensionPolicy::parse(policy_name);
            auto rows = sf_scan(F, policy, q_max);
            write_out(format == "json" ? io::sf_scan_json(rows) : io::sf_scan_csv(rows),
                      output_path);
        } else if (*expsum) {
            Polynomial F = Polynomial::parse(poly_text);
            write_out(io::expsum_json(F, expsum_report(F, ell, k, r)), output_path);
        } else if (*escan) {
            Polynomial F = Polynomial::parse(poly_text);
            ExpSumScan scan = expsum_scan(F, ell_max, pk_cap, threads);
            write_out(format == "json" ? io::expsum_scan_json(scan)
                                       : io::expsum_scan_csv(scan),
                      output_path);
        } else if (*vset) {
            Polynomial F = Polynomial::parse(poly_text);
            write_out(io::vset_json(F, vset_report(F, q, J, false)), output_path);
        } else if (*vdiag) {
            Polynomial F = Polynomial::parse(poly_text);
            write_out(io::vset_json(F, vset_report(F, q, J, true)), output_path);
        } else if (*dist) {
            Polynomial F = Polynomial::parse(poly_text);
            ExtensionPolicy policy = ExtensionPolicy::parse(policy_name);
            if (K > 0 &&
                static_cast<double>(q) > std::pow(std::log(static_cast<double>(x)), K))
                throw domain_error("q exceeds (log x)^K for the requested K");
            SpfTable spf(static_cast<std::uint32_t>(std::max<std::uint64_t>(x, 2)));
            UniformityReport rep = additive_residues_sieve(F, policy, q, x, spf, threads);
            write_out(format == "json" ? io::distribution_json(rep)
                                       : io::histogram_csv(rep),
                      output_path);
        } else if (*conv) {
            std::optional<int> jo;
            if (j_override >= 0) jo = static_cast<int>(j_override);
            ConvenientParams params = convenient_params(x, epsilon, jo);
            SpfTable spf(static_cast<std::uint32_t>(std::max<std::uint64_t>(x, 2)));
            if (single_n != 0) {
                write_out(io::decomposition_json(classify_convenient(single_n, params, spf)),
                          output_path);
            } else if (!poly_text.empty()) {
                Polynomial F = Polynomial::parse(poly_text);
                ExtensionPolicy policy = ExtensionPolicy::parse(policy_name);
                ConditionalTable tab = conditional_table(F, policy, q, params, spf);
                write_out(io::conditional_json(params, tab, q), output_path);
            } else {
                double frac = inconvenient_fraction(params, spf);
                write_out(io::convenient_params_json(params, frac), output_path);
            }
        } else if (*over) {
            SpfTable spf(static_cast<std::uint32_t>(std::max<std::uint64_t>(x, 2)));
            OverrepResult res = overrep_experiment(d, q1, x, spf, threads);
            write_out(io::overrep_json(res, d, q1, x), output_path);
        } else if (*accept) {
            AcceptanceOptions opts;
            opts.threads = threads;
            auto results = run_acceptance(opts);
            std::string out;
            bool all_pass = true;
            for (const auto& res : results) {
                all_pass = all_pass && res.pass;
                out += res.pass ? "PASS" : "FAIL";
                out += " criterion ";
                out += std::to_string(res.id);
                out += ": ";
                out += res.name;
                out += " -- ";
                out += res.detail;
                out += '\n';
                // timings are diagnostics, not part of the deterministic report
                std::cerr << "criterion " << res.id << ": " << io::fmt_double(res.seconds)
                          << "s\n";
            }
            write_out(out, output_path);
            if (!all_pass) return 4;
        }
    } catch (const domain_error& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return 1;
    } catch (const resource_error& e) {
        std::cerr << "error: resource: " << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace uniadd
