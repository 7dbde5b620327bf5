#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "anwel/counts.hpp"
#include "anwel/errors.hpp"
#include "anwel/report_io.hpp"

namespace {

// Usage / validation problems exit 64, numerical failures 3, and a table
// mismatch or a broken invariance exits 2.
constexpr int kExitUsage = 64;
constexpr int kExitNumerical = 3;
constexpr int kExitDisagreement = 2;
constexpr int kExitIo = 74;

std::uint64_t env_seed() {
    const char* s = std::getenv("ANWEL_SEED");
    if (!s || !*s) return 0;
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end == s || *end != '\0')
        throw anwel::BadIndices("ANWEL_SEED must be an unsigned integer");
    return v;
}

int write_out(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "anwel: cannot open " << path << " for writing\n";
        return kExitIo;
    }
    f << text;
    return 0;
}

anwel::RealForm pick_form(int n, const std::string& flag) {
    if (flag.empty()) return n % 2 == 1 ? anwel::RealForm::H : anwel::RealForm::Even;
    if (flag == "h") return anwel::RealForm::H;
    if (flag == "e") return anwel::RealForm::E;
    if (flag == "even") return anwel::RealForm::Even;
    throw anwel::BadIndices("form must be h, e or even");
}

struct Cli {
    std::string format;
    std::string output;
    std::uint64_t seed = 0;
    double epsilon = 1e-3;
    int n_max = 6;
    std::string stratum = "eg";
    int n = 0;
    int i = 0;
    int k = 0;
    std::string form;
    int trials = 20;
};

int run_table(const Cli& cli) {
    const std::vector<anwel::TableRow> rows = anwel::closed_form_table(cli.n_max, cli.seed);
    std::string text;
    if (cli.format == "json")
        text = anwel::emit_json(rows);
    else if (cli.format == "csv")
        text = anwel::emit_csv(rows);
    else
        text = anwel::emit_text(rows);
    if (const int io = write_out(text, cli.output)) return io;
    return anwel::all_rows_match(rows) ? 0 : kExitDisagreement;
}

int run_count(const Cli& cli) {
    anwel::CountOptions opts;
    opts.seed = cli.seed;
    opts.epsilon = cli.epsilon;

    const anwel::Stratum stratum = anwel::stratum_from_string(cli.stratum);
    anwel::CountReport rep;
    switch (stratum) {
        case anwel::Stratum::EG: {
            if (cli.n < 1) throw anwel::BadIndices("count --stratum eg needs --n");
            const anwel::AnFamily family(cli.n, pick_form(cli.n, cli.form));
            const int i = cli.i > 0 ? cli.i : anwel::delta_invariant(cli.n);
            rep = anwel::count_eg(family, i, opts);
            break;
        }
        case anwel::Stratum::EC: {
            int k = cli.k;
            if (k < 1) {
                if (cli.n < 1) throw anwel::BadIndices("count --stratum ec needs --k or --n");
                if (cli.n % 2 != 0)
                    throw anwel::BadIndices("equiclassical stratum needs an even n");
                k = cli.n / 2;
            }
            if (!cli.form.empty() && cli.form != "even")
                throw anwel::BadIndices("equiclassical members have the single form even");
            rep = anwel::count_ec(k, opts);
            break;
        }
        case anwel::Stratum::Discr: {
            if (cli.n < 1) throw anwel::BadIndices("count --stratum discr needs --n");
            const anwel::AnFamily family(cli.n, pick_form(cli.n, cli.form));
            rep = anwel::count_discr(family, opts);
            break;
        }
    }
    const std::string text =
        cli.format == "text" ? anwel::emit_text(rep) : anwel::emit_json(rep);
    return write_out(text, cli.output);
}

int run_invariance(const Cli& cli) {
    anwel::InvarianceParams params;
    params.trials = cli.trials;
    params.epsilon = cli.epsilon;
    params.seed = cli.seed;

    const anwel::Stratum stratum = anwel::stratum_from_string(cli.stratum);
    int n = cli.n;
    int i = cli.i;
    if (stratum == anwel::Stratum::EC && n < 1) {
        if (cli.k < 1) throw anwel::BadIndices("invariance --stratum ec needs --k or --n");
        n = 2 * cli.k;
    }
    if (n < 1) throw anwel::BadIndices("invariance needs --n");
    if (stratum == anwel::Stratum::EG && i < 1) i = anwel::delta_invariant(n);
    const anwel::AnFamily family(n, pick_form(n, cli.form));

    const anwel::InvarianceVerdict verdict =
        anwel::invariance_experiment(family, stratum, i, params);
    const std::string text =
        cli.format == "text" ? anwel::emit_text(verdict) : anwel::emit_json(verdict);
    if (const int io = write_out(text, cli.output)) return io;
    return verdict.invariant ? 0 : kExitDisagreement;
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    try {
        cli.seed = env_seed();
    } catch (const anwel::Error& e) {
        std::cerr << "anwel: " << e.what() << "\n";
        return kExitUsage;
    }

    CLI::App app{"signed counts on the discriminant strata of A_n deformations", "anwel"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cli.format, "output format (default: text for table, json otherwise)")
            ->check(CLI::IsMember({"json", "csv", "text"}));
        sub->add_option("-o,--output", cli.output, "write the report to a file");
        sub->add_option("--seed", cli.seed, "PRNG seed (default: ANWEL_SEED or 0)");
    };

    CLI::App* table = app.add_subcommand("table", "closed-form comparison table");
    table->add_option("--n-max", cli.n_max, "largest n in the table")
        ->check(CLI::Range(1, 1000000));
    add_common(table);

    CLI::App* count = app.add_subcommand("count", "signed count over one random slice");
    count->add_option("--stratum", cli.stratum, "stratum: eg, ec or discr")->required();
    count->add_option("--n", cli.n, "singularity index of A_n");
    count->add_option("--i", cli.i, "equigeneric index (eg only)");
    count->add_option("--k", cli.k, "equiclassical index (ec only)");
    count->add_option("--form", cli.form, "real form: h, e or even");
    count->add_option("--epsilon", cli.epsilon, "slice scale");
    add_common(count);

    CLI::App* invariance =
        app.add_subcommand("invariance", "repeat a count over independent slices");
    invariance->add_option("--stratum", cli.stratum, "stratum: eg, ec or discr")->required();
    invariance->add_option("--n", cli.n, "singularity index of A_n");
    invariance->add_option("--i", cli.i, "equigeneric index (eg only)");
    invariance->add_option("--k", cli.k, "equiclassical index (ec only)");
    invariance->add_option("--form", cli.form, "real form: h, e or even");
    invariance->add_option("--epsilon", cli.epsilon, "slice scale");
    invariance->add_option("--trials", cli.trials, "number of independent slices");
    add_common(invariance);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (app.got_subcommand(table)) {
            if (cli.format.empty()) cli.format = "text";
            return run_table(cli);
        }
        if (app.got_subcommand(count)) {
            if (cli.format.empty()) cli.format = "json";
            if (cli.format == "csv") {
                std::cerr << "anwel: csv output is only available for table\n";
                return kExitUsage;
            }
            return run_count(cli);
        }
        if (app.got_subcommand(invariance)) {
            if (cli.format.empty()) cli.format = "json";
            if (cli.format == "csv") {
                std::cerr << "anwel: csv output is only available for table\n";
                return kExitUsage;
            }
            return run_invariance(cli);
        }
    } catch (const anwel::BadIndices& e) {
        std::cerr << "anwel: " << e.what() << "\n";
        return kExitUsage;
    } catch (const anwel::DegreeMismatch& e) {
        std::cerr << "anwel: " << e.what() << "\n";
        return kExitUsage;
    } catch (const anwel::Error& e) {
        std::cerr << "anwel: " << e.what() << "\n";
        return kExitNumerical;
    }
    return kExitUsage;
}
