// Command-line front end: arithmetic on elements of L0^x in the canonical text
// form, the randomized axiom harnesses, and the finite-field scan.

#include <cstdint>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <qlinear/qlinear.hpp>

namespace
{

using json = nlohmann::ordered_json;
using namespace qlinear;

enum class output_format { text, records };

struct global_options {
    std::uint64_t den_cap = context{}.den_cap;
    output_format format = output_format::text;

    context ctx() const
    {
        return context{den_cap};
    }
};

void emit_record(const std::string &op, const json &input, const json &output)
{
    json rec;
    rec["op"] = op;
    rec["input"] = input;
    rec["output"] = output;
    std::cout << rec.dump() << '\n';
}

std::string verdict_text(const fq_verdict &v)
{
    if (!v.linear) {
        return "no";
    }
    return "yes F_" + std::to_string(*v.scalar_order) + " dim " + std::to_string(*v.dim);
}

json verdict_json(const fq_verdict &v)
{
    json j;
    j["answer"] = v.linear ? "yes" : "no";
    if (v.linear) {
        j["scalar_order"] = *v.scalar_order;
        j["dim"] = *v.dim;
    }
    return j;
}

json report_json(const axiom_report &rep)
{
    json j;
    j["seed"] = rep.seed;
    j["samples"] = rep.samples;
    j["aprec"] = to_string(rep.aprec);
    j["failures"] = rep.failures();
    json results = json::array();
    for (const auto &r : rep.results) {
        json o;
        o["name"] = r.name;
        o["checked"] = r.checked;
        o["failed"] = r.failed;
        o["skipped"] = r.skipped;
        if (r.counterexample) {
            o["counterexample"] = *r.counterexample;
        }
        results.push_back(o);
    }
    j["results"] = results;
    return j;
}

void print_report(const std::string &op, const json &input, const axiom_report &rep, output_format fmt)
{
    if (fmt == output_format::records) {
        emit_record(op, input, report_json(rep));
        return;
    }
    std::cout << op << ": seed " << rep.seed << ", samples " << rep.samples << ", aprec " << to_string(rep.aprec) << '\n';
    for (const auto &r : rep.results) {
        std::cout << "  " << (r.passed() ? "PASS " : "FAIL ") << r.name << ": checked " << r.checked << ", failed " << r.failed
                  << ", skipped " << r.skipped << '\n';
        if (r.counterexample) {
            std::cout << "    counterexample: " << *r.counterexample << '\n';
        }
    }
    std::cout << "failures: " << rep.failures() << '\n';
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact arithmetic in the multiplicative group of the Puiseux field over F2"};
    app.require_subcommand(1);

    global_options g;
    std::string fmt_name = "text";
    app.add_option("--den-cap", g.den_cap, "Largest grid denominator allowed")->check(CLI::Range(std::uint64_t(1), std::uint64_t(1) << 32));
    app.add_option("--format", fmt_name, "Output format")->check(CLI::IsMember({"text", "records"}));

    std::string a_text, b_text, e_text, k_text, r_text;

    auto *mul = app.add_subcommand("mul", "Product of two elements");
    mul->add_option("A", a_text)->required();
    mul->add_option("B", b_text)->required();

    auto *inv = app.add_subcommand("inv", "Inverse of an element");
    inv->add_option("A", a_text)->required();

    auto *pow = app.add_subcommand("pow", "Integer power of an element");
    pow->add_option("A", a_text)->required();
    pow->add_option("E", e_text, "Integer exponent")->required();

    auto *root = app.add_subcommand("root", "Unique k-th root with residue 1");
    root->add_option("A", a_text)->required();
    root->add_option("K", k_text, "Positive integer")->required();

    auto *smul = app.add_subcommand("scalar-mul", "Rational scalar action a^(p/q)");
    smul->add_option("P/Q", r_text)->required();
    smul->add_option("A", a_text)->required();

    auto *dec = app.add_subcommand("decompose", "Split a series into valuation and unit");
    dec->add_option("A", a_text)->required();

    auto *comp = app.add_subcommand("compose", "Build x^alpha * u");
    comp->add_option("ALPHA", r_text)->required();
    comp->add_option("U", a_text)->required();

    std::size_t samples = 100;
    std::string aprec_text = "64";
    std::uint64_t seed = 42;
    std::int64_t scalar_bound = 9, n_max = 64;
    std::uint64_t k_max = 12;

    auto *ax = app.add_subcommand("axioms", "Randomized check of the vector-space laws");
    ax->add_option("--samples", samples)->check(CLI::PositiveNumber);
    ax->add_option("--aprec", aprec_text);
    ax->add_option("--seed", seed);
    ax->add_option("--scalar-bound", scalar_bound)->check(CLI::PositiveNumber);

    auto *tor = app.add_subcommand("torsion", "Randomized check that no nontrivial unit has finite order");
    tor->add_option("--samples", samples)->check(CLI::PositiveNumber);
    tor->add_option("--nmax", n_max);
    tor->add_option("--aprec", aprec_text);
    tor->add_option("--seed", seed);

    auto *bij = app.add_subcommand("bijectivity", "Randomized check that u -> u^k is bijective");
    bij->add_option("--samples", samples)->check(CLI::PositiveNumber);
    bij->add_option("--kmax", k_max);
    bij->add_option("--aprec", aprec_text);
    bij->add_option("--seed", seed);

    std::uint64_t q_max = std::uint64_t(1) << 20;
    bool with_oracle = false;
    auto *scan = app.add_subcommand("fq-scan", "Which F_q^x are vector spaces, for all prime powers q <= max");
    scan->add_option("--max", q_max)->check(CLI::Range(std::uint64_t(2), std::uint64_t(1) << 32));
    scan->add_flag("--oracle", with_oracle, "Also run the element-order oracle");

    CLI11_PARSE(app, argc, argv);
    g.format = fmt_name == "records" ? output_format::records : output_format::text;
    const auto ctx = g.ctx();

    auto *sub = app.get_subcommands().front();
    const std::string op = sub->get_name();
    json input = json::array();
    for (const auto *opt : sub->get_options()) {
        if (opt->get_name() != "--help" && opt->count() > 0) {
            if (opt->get_positional()) {
                input.push_back(opt->as<std::string>());
            } else {
                input.push_back(opt->get_name() + "=" + opt->as<std::string>());
            }
        }
    }

    const auto element_out = [&](const l0_element &r) {
        if (g.format == output_format::records) {
            emit_record(op, input, format_element(r));
        } else {
            std::cout << format_element(r) << '\n';
        }
    };

    try {
        if (sub == mul) {
            element_out(element_mul(parse_element(a_text, ctx), parse_element(b_text, ctx), ctx));
        } else if (sub == inv) {
            element_out(element_inv(parse_element(a_text, ctx)));
        } else if (sub == pow) {
            const auto e = parse_rational(e_text);
            if (!is_integral(e)) {
                throw out_of_range("pow: exponent must be an integer");
            }
            element_out(element_pow(parse_element(a_text, ctx), to_int64(num(e))));
        } else if (sub == root) {
            const auto k = parse_rational(k_text);
            if (!is_integral(k) || k <= 0) {
                throw out_of_range("root: index must be a positive integer");
            }
            element_out(element_root(parse_element(a_text, ctx), to_uint64(num(k)), ctx));
        } else if (sub == smul) {
            element_out(element_scalar_mul(parse_rational(r_text), parse_element(a_text, ctx), ctx));
        } else if (sub == dec) {
            const auto a = parse_element(a_text, ctx);
            if (g.format == output_format::records) {
                emit_record(op, input, json{{"val", to_string(a.val)}, {"unit", format_unit(a.unit)}});
            } else {
                std::cout << "val: " << to_string(a.val) << '\n' << "unit: " << format_unit(a.unit) << '\n';
            }
        } else if (sub == comp) {
            element_out(compose(parse_rational(r_text), parse_unit(a_text, ctx)));
        } else if (sub == ax) {
            const auto rep = check_vector_space_axioms(samples, parse_rational(aprec_text), seed, scalar_bound, ctx);
            print_report(op, input, rep, g.format);
            return rep.passed() ? 0 : 1;
        } else if (sub == tor) {
            const auto rep = check_torsion_free(samples, n_max, parse_rational(aprec_text), seed, ctx);
            print_report(op, input, rep, g.format);
            return rep.passed() ? 0 : 1;
        } else if (sub == bij) {
            const auto rep = check_root_bijectivity(samples, k_max, parse_rational(aprec_text), seed, ctx);
            print_report(op, input, rep, g.format);
            return rep.passed() ? 0 : 1;
        } else if (sub == scan) {
            const auto rows = prime_power_scan(q_max, with_oracle);
            std::size_t disagreements = 0;
            std::vector<std::uint64_t> yes;
            std::ostringstream body;
            if (g.format == output_format::text) {
                body << std::left << std::setw(10) << "q" << std::setw(10) << "p" << std::setw(4) << "n" << std::setw(22) << "theorem";
                if (with_oracle) {
                    body << std::setw(22) << "oracle";
                }
                body << '\n';
            }
            for (const auto &row : rows) {
                const bool agree = !row.oracle || *row.oracle == row.theorem;
                disagreements += agree ? 0 : 1;
                if (row.theorem.linear) {
                    yes.push_back(row.q.q);
                }
                if (g.format == output_format::records) {
                    json out{{"theorem", verdict_json(row.theorem)}};
                    if (row.oracle) {
                        out["oracle"] = verdict_json(*row.oracle);
                        out["agree"] = agree;
                    }
                    json in{{"q", row.q.q}, {"p", row.q.p}, {"n", row.q.n}};
                    json rec;
                    rec["op"] = op;
                    rec["input"] = in;
                    rec["output"] = out;
                    body << rec.dump() << '\n';
                } else {
                    body << std::setw(10) << row.q.q << std::setw(10) << row.q.p << std::setw(4) << row.q.n << std::setw(22)
                         << verdict_text(row.theorem);
                    if (row.oracle) {
                        body << std::setw(22) << verdict_text(*row.oracle) << (agree ? "" : "MISMATCH");
                    }
                    body << '\n';
                }
            }
            std::cout << body.str();
            if (g.format == output_format::records) {
                emit_record(op, input, json{{"prime_powers", rows.size()}, {"yes", yes}, {"disagreements", disagreements}});
            } else {
                std::cout << "prime powers: " << rows.size() << "\nyes:";
                for (auto q : yes) {
                    std::cout << ' ' << q;
                }
                std::cout << '\n';
                if (with_oracle) {
                    std::cout << "disagreements: " << disagreements << '\n';
                }
            }
            return disagreements == 0 ? 0 : 1;
        }
    } catch (const std::exception &e) {
        if (g.format == output_format::records) {
            json rec;
            rec["op"] = op;
            rec["input"] = input;
            rec["error"] = e.what();
            std::cout << rec.dump() << '\n';
        } else {
            std::cerr << "error: " << e.what() << '\n';
        }
        return 1;
    }
    return 0;
}
