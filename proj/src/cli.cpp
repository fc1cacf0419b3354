#include "qmoore/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <sstream>

#include "qmoore/davis.hpp"
#include "qmoore/homalg.hpp"
#include "qmoore/l2.hpp"
#include "qmoore/moore.hpp"

namespace qmoore {

const char* const kVersionTag = "qmoore 1.0.0";

namespace {

std::vector<int> parse_radii(const std::string& text) {
    std::vector<int> out;
    std::istringstream is(text);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stoi(item));
    return out;
}

void emit_header(std::ostream& out, const std::vector<std::string>& args) {
    out << kVersionTag << " |";
    for (const auto& a : args) out << ' ' << a;
    out << '\n';
}

std::string slurp(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void spill(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write '" + path + "'");
    out << text;
}

void print_homology(std::ostream& out, const HomologySummary& h) { out << h.str(); }

MirroredSpace example_by_name(const std::string& name) {
    if (name == "interval") return example_interval();
    if (name == "disk") return example_disk_square();
    if (name == "annulus") return example_annulus();
    throw InputError("unknown example '" + name + "' (interval, disk, annulus)");
}

struct PipelineResult {
    std::string log;
    SingerVerdict verdict = SingerVerdict::not_applicable;
};

// pipeline mini-language: "f2^4,davis:n=7,chambers=2^m" or a numeric chamber
// count like "chambers=16"
PipelineResult run_pipeline(const std::string& pipeline) {
    PipelineResult out;
    std::ostringstream log;
    std::istringstream is(pipeline);
    std::string stage;
    L2Profile profile;
    bool have_profile = false;
    int davis_n = -1;
    LinForm chambers = symbolic_chambers();
    bool symbolic = true;
    while (std::getline(is, stage, ',')) {
        if (stage.rfind("f2^", 0) == 0) {
            int d = std::stoi(stage.substr(3));
            profile = free_power_profile(d);
            profile.rationally_aspherical = true;
            have_profile = true;
            log << "profile " << profile.str() << '\n';
            log << "  chi = " << euler_characteristic(profile) << '\n';
        } else if (stage == "f2") {
            profile = atom_f2();
            profile.rationally_aspherical = true;
            have_profile = true;
            log << "profile " << profile.str() << '\n';
        } else if (stage.rfind("davis:n=", 0) == 0) {
            davis_n = std::stoi(stage.substr(8));
        } else if (stage.rfind("chambers=", 0) == 0) {
            std::string v = stage.substr(9);
            if (v == "2^m") {
                symbolic = true;
            } else {
                symbolic = false;
                chambers = LinForm(Rat(Int(v)));
            }
        } else {
            throw InputError("unknown pipeline stage '" + stage + "'");
        }
    }
    if (!have_profile || davis_n < 0)
        throw InputError("pipeline needs a group profile and a davis:n=<n> stage");
    auto constraints =
        davis_transfer(profile, symbolic ? symbolic_chambers() : chambers, davis_n);
    log << constraints.str();
    out.verdict = singer_verdict(constraints);
    log << "singer (rational variant): " << verdict_str(out.verdict) << '\n';
    out.log = log.str();
    return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact toolkit: equivariant rational Moore spaces, reflection "
                 "group quotients, and L2 Betti arithmetic"};
    app.require_subcommand(1);

    // ring
    auto* ring = app.add_subcommand("ring", "group ring arithmetic");
    std::string ring_group = "f2";
    std::string ring_op = "mul";
    std::vector<std::string> ring_args;
    int ring_radius = 2;
    ring->add_option("--group", ring_group, "group spec, e.g. f2^2");
    ring->add_option("op", ring_op, "mul | involute | ball | parse");
    ring->add_option("operands", ring_args, "ring elements in canonical text form");
    ring->add_option("--radius", ring_radius, "ball radius");

    // complex
    auto* complex_cmd = app.add_subcommand("complex", "dualizing resolutions and homology");
    std::string cx_group = "f2^2";
    int cx_r = 3;
    std::string cx_out, cx_in;
    complex_cmd->add_option("--group", cx_group, "group spec");
    complex_cmd->add_option("--r", cx_r, "bottom degree r >= 2");
    complex_cmd->add_option("--out", cx_out, "write the resolution to a file");
    complex_cmd->add_option("--in", cx_in, "read a complex and print coinvariant homology");

    // lie
    auto* lie_cmd = app.add_subcommand("lie", "free graded lie dimension tables");
    std::string lie_gens = "x:1,y:1";
    int lie_max = 6;
    lie_cmd->add_option("--gens", lie_gens, "generators, e.g. x:1,y:2");
    lie_cmd->add_option("--max-degree", lie_max, "table range");

    // moore
    auto* moore_cmd = app.add_subcommand("moore", "equivariant rational Moore space model");
    std::string mo_action = "build";
    std::string mo_group = "f2^2";
    int mo_r = 3;
    int mo_bracket = 2;
    int mo_radius = 3;
    long long mo_max_scale = 1000000;
    unsigned long long mo_seed = 1;
    std::string mo_out;
    moore_cmd->add_option("action", mo_action, "build");
    moore_cmd->add_option("--group", mo_group, "group spec");
    moore_cmd->add_option("--r", mo_r, "bottom degree r >= 2");
    moore_cmd->add_option("--bracket-cap", mo_bracket, "bracket length cap");
    moore_cmd->add_option("--radius", mo_radius, "support radius cap");
    moore_cmd->add_option("--max-scale", mo_max_scale, "bound on the integrality scale N");
    moore_cmd->add_option("--seed", mo_seed, "seed for sampled equivariance checks");
    moore_cmd->add_option("--out", mo_out, "write the model to a file");

    // davis
    auto* davis_cmd = app.add_subcommand("davis", "reflection group construction");
    std::string dv_action = "build";
    std::string dv_m, dv_l, dv_example = "interval", dv_check = "all";
    davis_cmd->add_option("action", dv_action, "build");
    davis_cmd->add_option("--m", dv_m, "mirrored space file (M cells, mirror assignment)");
    davis_cmd->add_option("--l", dv_l, "optional separate file with the nerve L");
    davis_cmd->add_option("--example", dv_example, "interval | disk | annulus");
    davis_cmd->add_option("--check", dv_check, "all | homology | decomposition | duality");

    // l2
    auto* l2_cmd = app.add_subcommand("l2", "L2 Betti ledger");
    std::string l2_action = "derive";
    std::string l2_pipeline = "f2^4,davis:n=7,chambers=2^m";
    bool l2_verdict = false;
    l2_cmd->add_option("action", l2_action, "derive");
    l2_cmd->add_option("--pipeline", l2_pipeline, "e.g. f2^4,davis:n=7,chambers=2^m");
    l2_cmd->add_flag("--verdict", l2_verdict, "print only the verdict line last");

    // homalg
    auto* homalg_cmd = app.add_subcommand("homalg", "group homology assembly");
    std::string ha_action = "vanishing";
    int ha_d = 4;
    std::string ha_radii = "2,3,4,5,6";
    homalg_cmd->add_option("action", ha_action, "vanishing");
    homalg_cmd->add_option("--d", ha_d, "number of F_2 factors");
    homalg_cmd->add_option("--radii", ha_radii, "comma separated window radii");

    // truncate
    auto* trunc_cmd = app.add_subcommand("truncate", "window homology oracle");
    std::string tr_what = "fox";
    int tr_k = 2;
    std::string tr_radii = "2,3,4";
    trunc_cmd->add_option("what", tr_what, "fox | dualfox | dd");
    trunc_cmd->add_option("--k", tr_k, "free group rank");
    trunc_cmd->add_option("--radii", tr_radii, "comma separated window radii");

    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    try {
        if (ring->parsed()) {
            emit_header(out, args);
            GroupSpec spec = GroupSpec::parse(ring_group);
            if (ring_op == "mul") {
                if (ring_args.size() != 2) throw InputError("ring mul needs two operands");
                auto x = RingElement::parse(spec, ring_args[0]);
                auto y = RingElement::parse(spec, ring_args[1]);
                out << (x * y).str() << '\n';
            } else if (ring_op == "involute") {
                if (ring_args.size() != 1) throw InputError("ring involute needs one operand");
                out << RingElement::parse(spec, ring_args[0]).involute().str() << '\n';
            } else if (ring_op == "ball") {
                auto b = ball(spec, ring_radius);
                out << "ball radius " << ring_radius << " size " << b.size() << '\n';
                for (const auto& g : b) out << g.str(spec) << '\n';
            } else if (ring_op == "parse") {
                if (ring_args.size() != 1) throw InputError("ring parse needs one operand");
                out << RingElement::parse(spec, ring_args[0]).str() << '\n';
            } else {
                throw InputError("unknown ring op '" + ring_op + "'");
            }
        } else if (complex_cmd->parsed()) {
            emit_header(out, args);
            if (!cx_in.empty()) {
                auto c = read_complex(slurp(cx_in));
                c.validate();
                out << "complex over " << c.spec.str() << ", degrees " << c.lo << ".." << c.hi
                    << '\n';
                print_homology(out, homology(coinvariants(c)));
            } else {
                auto res = dualizing_resolution(GroupSpec::parse(cx_group), cx_r);
                out << "dualizing resolution over " << cx_group << ", degrees " << res.complex.lo
                    << ".." << res.complex.hi << '\n';
                for (int n = res.complex.lo; n <= res.complex.hi; ++n)
                    out << "rank F_" << n << " = " << res.complex.rank(n) << '\n';
                print_homology(out, homology(coinvariants(res.complex)));
                if (!cx_out.empty()) {
                    spill(cx_out, write_complex(res.complex));
                    out << "wrote " << cx_out << '\n';
                }
            }
        } else if (lie_cmd->parsed()) {
            emit_header(out, args);
            auto gens = GradedGenerators::parse(lie_gens);
            LieContext ctx(gens, lie_max);
            out << "degree  lyndon  witt  primitives  tensor\n";
            for (int n = 1; n <= lie_max; ++n) {
                out << "  " << n << "     " << ctx.dimension(n) << "     " << ctx.witt_dimension(n)
                    << "     " << ctx.primitives_dimension(n) << "     " << ctx.words(n).size()
                    << '\n';
            }
        } else if (moore_cmd->parsed()) {
            emit_header(out, args);
            if (mo_action != "build") throw InputError("unknown moore action '" + mo_action + "'");
            ModelCaps caps;
            caps.bracket_cap = mo_bracket;
            caps.support_radius = mo_radius;
            caps.max_scale = mo_max_scale;
            auto build = build_moore_model(GroupSpec::parse(mo_group), mo_r, caps);
            out << build.report.str();
            auto v = verify_model(build.model, build.resolution.complex, 20, mo_seed);
            out << v.str() << '\n';
            auto pair = classifying_union(build.model);
            auto dual = self_duality_check(pair, mo_r, build.resolution.d, build.model.scale);
            out << dual.str() << '\n';
            if (!mo_out.empty()) {
                spill(mo_out, write_model(build.model));
                out << "wrote " << mo_out << '\n';
            }
            if (!v.all()) {
                err << "model verification failed\n";
                return 1;
            }
        } else if (davis_cmd->parsed()) {
            emit_header(out, args);
            if (dv_action != "build") throw InputError("unknown davis action '" + dv_action + "'");
            MirroredSpace s;
            if (dv_m.empty()) {
                s = example_by_name(dv_example);
            } else {
                // M and L may live in one combined file or two separate ones
                auto strip_header = [](std::string text) {
                    std::string out_text;
                    std::istringstream ls(text);
                    std::string line;
                    while (std::getline(ls, line))
                        if (line != "mirrored v1") out_text += line + '\n';
                    return out_text;
                };
                std::string combined = "mirrored v1\n" + strip_header(slurp(dv_m));
                if (!dv_l.empty()) combined += strip_header(slurp(dv_l));
                s = read_mirrored_space(combined);
            }
            auto flag = flag_check(s.l);
            if (!flag.flag && s.explicit_mirror_sets.empty())
                throw InputError("nerve is not a flag complex");
            auto b = basic_construction(s);
            out << "chambers " << b.chambers << ", cells";
            for (long long c : b.cells_per_dim) out << ' ' << c;
            out << '\n';
            bool ok = true;
            if (dv_check == "all" || dv_check == "homology") print_homology(out, homology(b.complex));
            if (dv_check == "all" || dv_check == "decomposition") {
                auto rep = decomposition_check(s);
                out << rep.str();
                ok = ok && rep.agree;
            }
            if (dv_check == "all" || dv_check == "duality") {
                auto rep = duality_check(b, b.complex.hi);
                out << rep.str() << '\n';
            }
            if (!ok) {
                err << "davis checks failed\n";
                return 1;
            }
        } else if (l2_cmd->parsed()) {
            emit_header(out, args);
            if (l2_action != "derive") throw InputError("unknown l2 action '" + l2_action + "'");
            auto res = run_pipeline(l2_pipeline);
            out << res.log;
            if (l2_verdict) out << "verdict: " << verdict_str(res.verdict) << '\n';
        } else if (homalg_cmd->parsed()) {
            emit_header(out, args);
            if (ha_action != "vanishing")
                throw InputError("unknown homalg action '" + ha_action + "'");
            auto rep = vanishing_assembly(ha_d, parse_radii(ha_radii));
            out << rep.str();
            if (!rep.vanishes) {
                err << "vanishing not established\n";
                return 1;
            }
        } else if (trunc_cmd->parsed()) {
            emit_header(out, args);
            PropagationComplex p;
            if (tr_what == "fox")
                p = PropagationComplex::from_free_complex(fox_complex(tr_k));
            else if (tr_what == "dualfox")
                p = PropagationComplex::from_free_complex(dual_fox_resolution(tr_k));
            else if (tr_what == "dd")
                p = dd_complex(tr_k);
            else
                throw InputError("unknown truncate target '" + tr_what + "'");
            out << truncated_homology(p, parse_radii(tr_radii)).table();
        }
        return 0;
    } catch (const CapsExhausted& e) {
        err << "caps exhausted: " << e.what() << '\n';
        return 3;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return 2;
    } catch (const TypeError& e) {
        err << "type error: " << e.what() << '\n';
        return 2;
    } catch (const InvariantViolation& e) {
        err << "invariant failure: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace qmoore
