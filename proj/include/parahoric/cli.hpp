#pragma once

// Command-line front end. run() parses one command, prints its result as
// text or JSON and returns the exit status: 0 on success, 1 on domain
// errors, 2 on malformed input.

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "affine_dynkin.hpp"
#include "descent.hpp"
#include "error.hpp"
#include "factorization.hpp"
#include "galois_covers.hpp"
#include "picard_lattice.hpp"
#include "serialize.hpp"
#include "verlinde.hpp"

namespace parahoric::cli {

struct Output {
    json data;
    std::string text;
};

namespace detail {

inline std::string read_file(const std::string& path, const char* what) {
    std::ifstream in(path);
    if (!in) throw domain_error(std::string("cannot read ") + what + " file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline GroupDatum load_datum(const std::string& path) { return datum_from_json(parse_json(read_file(path, "--datum"))); }

inline WeightBundle load_bundle(const std::string& path) {
    return bundle_from_json(parse_json(read_file(path, "--bundle")));
}

template <class Range>
std::string joined(const Range& r, const char* sep = " ") {
    std::ostringstream ss;
    bool first = true;
    for (const auto& x : r) {
        if (!first) ss << sep;
        ss << x;
        first = false;
    }
    return ss.str();
}

inline std::string weight_text(const Weight& w) {
    std::string s;
    for (const auto& [v, n] : w) {
        if (!n) continue;
        if (!s.empty()) s += " + ";
        s += (n == 1 ? "" : std::to_string(n) + "*") + "L" + std::to_string(v);
    }
    return s.empty() ? "0" : s;
}

inline std::string witness_text(const DecompositionWitness& w) {
    std::ostringstream ss;
    for (const auto& f : w.factors) {
        ss << "  " << kind_name(f.kind);
        for (const auto& p : f.points) {
            ss << "  ";
            if (!p.label.empty()) ss << p.label << ":";
            ss << p.monodromy.str() << "[" << weight_text(p.weight) << "]";
        }
        if (f.conjugator) ss << "  conjugator " << f.conjugator->str();
        const auto r = base_case_rank(f);
        ss << "  rank " << (r ? std::to_string(r->value) : std::string("unknown")) << "\n";
    }
    return ss.str();
}

inline std::string certificate_text(const DescentCertificate& c) {
    std::ostringstream ss;
    ss << "verdict " << verdict_name(c.verdict) << "\n";
    ss << "charge " << c.charge << "\n";
    ss << "rank bound " << (c.rank_bound ? std::to_string(c.rank_bound->value) : std::string("unknown")) << "\n";
    ss << "factors\n" << witness_text(c.witness);
    return ss.str();
}

inline std::vector<std::vector<Perm>> classes_of(const FiniteGroup& g, const std::vector<std::string>& reps) {
    std::vector<std::vector<Perm>> out;
    for (const auto& r : reps) out.push_back(conjugacy_class(g, parse_perm(r)));
    return out;
}

inline BaseCase canonical_case(BaseCaseKind k) {
    const FiniteType d4{Series::D, 4};
    auto pts = [](std::vector<Perm> t) {
        std::vector<FactorPoint> out;
        for (const auto& g : t) out.push_back({"", g, Weight{{0, 1}}});
        return out;
    };
    switch (k) {
    case BaseCaseKind::UntwistedVacuum: return {k, pts({Perm{}}), d4};
    case BaseCaseKind::UntwistedPair: return {k, pts({Perm{}, Perm{}}), d4};
    case BaseCaseKind::TwistedPair: return {k, pts({perms::t12(), perms::t12()}), d4};
    case BaseCaseKind::EllipticTriple: return {k, pts({perms::c123(), perms::c123(), perms::c123()}), d4};
    case BaseCaseKind::S3Case1: return {k, pts({perms::t12(), perms::t12()}), d4};
    case BaseCaseKind::S3Case2: return {k, pts({perms::c123(), perms::c132()}), d4};
    case BaseCaseKind::S3Case3: return {k, pts(s3_case3_rep()), d4};
    case BaseCaseKind::S3Case4: return {k, pts(s3_case4_rep()), d4};
    case BaseCaseKind::ClosedFormA: break;
    }
    throw domain_error("ClosedFormA needs parameters; use 'verlinde closed-form g n r'");
}

inline Output rank_output(const RankResult& r) {
    json j = to_json(r);
    j["schema"] = kSchemaVersion;
    return {j, "rank " + std::to_string(r.value) + "\n" + r.formula + "\n"};
}

} // namespace detail

/// Runs one command. args excludes the program name.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Parahoric Bruhat-Tits group schemes: affine types, Picard lattices, covers and descent"};
    app.name("parahoric");
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    std::size_t budget = 100'000;
    app.add_flag("--json", as_json, "Machine-readable JSON output");
    app.add_option("--budget", budget, "Bound on lcm certificates tried by cg")->check(CLI::PositiveNumber);

    std::function<Output()> action;
    std::string datum_path, bundle_path, type_text, tuple_text, group_name = "S3", case_text;
    int base_genus = 0, max_rank = 8, cf_g = 0, cf_n = 1, cf_r = 2;
    bool connected_only = false;
    std::vector<std::string> class_reps;

    auto* dynkin = app.add_subcommand("dynkin", "Affine Dynkin data")->require_subcommand(1);
    auto* dinfo = dynkin->add_subcommand("info", "Vertices, Cartan matrix, dual labels and marks of a type");
    dinfo->add_option("type", type_text, "Affine type such as A2~2, D4~3 or E8")->required();
    dinfo->callback([&] {
        action = [&] {
            const AffineType t = parse_affine_type(type_text);
            json j = {{"schema", kSchemaVersion},
                      {"type", t.name()},
                      {"vertices", all_vertices(t)},
                      {"cartan", t.cartan()},
                      {"dual_labels", t.dual_labels()},
                      {"marks", t.marks()}};
            std::ostringstream ss;
            ss << "type " << t.name() << "\n";
            ss << "vertices " << detail::joined(all_vertices(t)) << "\n";
            ss << "dual labels " << detail::joined(t.dual_labels()) << "\n";
            ss << "marks " << detail::joined(t.marks()) << "\n";
            ss << "cartan\n";
            for (const auto& row : t.cartan()) {
                ss << " ";
                for (int a : row) ss << (a >= 0 ? "  " : " ") << a;
                ss << "\n";
            }
            return Output{j, ss.str()};
        };
    });
    auto* dlist = dynkin->add_subcommand("list", "Every implemented type up to a finite rank");
    dlist->add_option("--max-rank", max_rank, "Largest finite rank")->check(CLI::Range(1, kMaxRank));
    dlist->callback([&] {
        action = [&] {
            json names = json::array();
            std::string text;
            for (const auto& t : type_inventory(max_rank)) {
                names.push_back(t.name());
                text += t.name() + "  " + detail::joined(t.dual_labels()) + "\n";
            }
            return Output{{{"schema", kSchemaVersion}, {"types", names}}, text};
        };
    });

    auto* picard = app.add_subcommand("picard", "Picard lattice of a datum")->require_subcommand(1);
    auto* pcd = picard->add_subcommand("cdelta", "lcm over bad points of the facet label gcd");
    auto* prank = picard->add_subcommand("rank", "Rank of Pic^Delta");
    auto* pcheck = picard->add_subcommand("check", "Is a bundle in Pic^Delta, and at which charge");
    for (auto* s : {pcd, prank, pcheck}) s->add_option("--datum", datum_path, "Datum JSON file")->required();
    pcheck->add_option("--bundle", bundle_path, "Bundle JSON file")->required();
    pcd->callback([&] {
        action = [&] {
            const auto c = c_delta(detail::load_datum(datum_path));
            return Output{{{"schema", kSchemaVersion}, {"c_delta", c}}, "c_delta " + std::to_string(c) + "\n"};
        };
    });
    prank->callback([&] {
        action = [&] {
            const int r = pic_delta_rank(detail::load_datum(datum_path));
            return Output{{{"schema", kSchemaVersion}, {"rank", r}}, "rank " + std::to_string(r) + "\n"};
        };
    });
    pcheck->callback([&] {
        action = [&] {
            const auto d = detail::load_datum(datum_path);
            const auto b = detail::load_bundle(bundle_path);
            const auto c = is_pic_delta(d, b);
            json j = {{"schema", kSchemaVersion},
                      {"in_pic_delta", c.has_value()},
                      {"charge", c ? json(*c) : json(nullptr)},
                      {"dominant", is_dominant(b)}};
            std::string text = c ? "in Pic^Delta, charge " + std::to_string(*c) + "\n" : "not in Pic^Delta\n";
            text += std::string("dominant ") + (is_dominant(b) ? "yes" : "no") + "\n";
            return Output{j, text};
        };
    });

    auto* covers = app.add_subcommand("covers", "Branched Galois covers")->require_subcommand(1);
    auto* cgenus = covers->add_subcommand("genus", "Riemann-Hurwitz genus of a cover");
    cgenus->add_option("tuple", tuple_text, "Monodromies, e.g. \"(12),(23),(132)\"")->required();
    cgenus->add_option("--group", group_name, "Trivial, C2, C3 or S3");
    cgenus->add_option("--base-genus", base_genus, "Genus of the base curve")->check(CLI::NonNegativeNumber);
    cgenus->callback([&] {
        action = [&] {
            const auto t = parse_tuple(tuple_text);
            const auto s = genus_riemann_hurwitz(base_genus, FiniteGroup::parse(group_name), t);
            return Output{{{"schema", kSchemaVersion}, {"genus", s.genus}, {"components", s.component_count}},
                          "genus " + std::to_string(s.genus) + "\ncomponents " + std::to_string(s.component_count) + "\n"};
        };
    });
    auto* cconn = covers->add_subcommand("connected", "Does a genus-0 tuple generate the group");
    cconn->add_option("tuple", tuple_text, "Monodromies")->required();
    cconn->add_option("--group", group_name, "Trivial, C2, C3 or S3");
    cconn->callback([&] {
        action = [&] {
            const bool c = is_connected_genus0({FiniteGroup::parse(group_name), parse_tuple(tuple_text)});
            return Output{{{"schema", kSchemaVersion}, {"connected", c}}, std::string(c ? "connected" : "disconnected") + "\n"};
        };
    });
    auto* cenum = covers->add_subcommand("enumerate", "Tuples with product e in given conjugacy classes");
    cenum->add_option("classes", class_reps, "One class representative per point")->required();
    cenum->add_option("--group", group_name, "Trivial, C2, C3 or S3");
    cenum->add_flag("--connected", connected_only, "Keep only tuples generating the group");
    cenum->callback([&] {
        action = [&] {
            const auto g = FiniteGroup::parse(group_name);
            const auto e = enumerate_tuples(g, detail::classes_of(g, class_reps), connected_only);
            json tuples = json::array();
            std::string text = "count " + std::to_string(e.count) + "\n";
            for (const auto& t : e.tuples) {
                tuples.push_back(format_tuple(t));
                text += "  " + format_tuple(t) + "\n";
            }
            return Output{{{"schema", kSchemaVersion}, {"count", e.count}, {"tuples", tuples}}, text};
        };
    });

    auto* reduce = app.add_subcommand("reduce", "Degeneration rewrites")->require_subcommand(1);
    auto* rs3 = reduce->add_subcommand("s3", "Reduce S3 data on the line to base cases");
    rs3->add_option("tuple", tuple_text, "Monodromies")->required();
    rs3->callback([&] {
        action = [&] {
            const auto w = s3_reduce({FiniteGroup::s3(), parse_tuple(tuple_text)});
            json j = to_json(w);
            j["schema"] = kSchemaVersion;
            return Output{j, "factors\n" + detail::witness_text(w)};
        };
    });

    auto* verlinde = app.add_subcommand("verlinde", "Exact ranks of base cases")->require_subcommand(1);
    auto* vrank = verlinde->add_subcommand("rank", "Rank of a base case (by kind) or of a connected S3 tuple");
    vrank->add_option("case", case_text, "Base case kind such as S3Case4, or a tuple")->required();
    vrank->callback([&] {
        action = [&] {
            if (!case_text.empty() && case_text.front() != '(' && case_text.front() != '[') {
                const auto r = base_case_rank(detail::canonical_case(parse_kind(case_text)));
                if (!r) throw domain_error("rank unknown for " + case_text);
                return detail::rank_output(*r);
            }
            return detail::rank_output(s3_level1_rank({FiniteGroup::s3(), parse_tuple(case_text)}));
        };
    });
    auto* vcf = verlinde->add_subcommand("closed-form", "2^g r^(g+n-1) for type A_(2r-1)^(2)");
    vcf->add_option("g", cf_g, "Genus")->required();
    vcf->add_option("n", cf_n, "Half the number of branch points")->required();
    vcf->add_option("r", cf_r, "Type parameter")->required();
    vcf->callback([&] {
        action = [&] {
            const auto v = rank_closed_form_A(cf_g, cf_n, cf_r);
            return Output{{{"schema", kSchemaVersion}, {"value", v}}, "rank " + std::to_string(v) + "\n"};
        };
    });

    auto* descend = app.add_subcommand("descend", "Certify that a bundle descends");
    descend->add_option("--datum", datum_path, "Datum JSON file")->required();
    descend->add_option("--bundle", bundle_path, "Bundle JSON file")->required();
    descend->callback([&] {
        action = [&] {
            const auto c = certify_descent(detail::load_datum(datum_path), detail::load_bundle(bundle_path));
            json j = to_json(c);
            j["schema"] = kSchemaVersion;
            return Output{j, detail::certificate_text(c)};
        };
    });

    auto* cg = app.add_subcommand("cg", "Bounds and exact value of c_G");
    cg->add_option("--datum", datum_path, "Datum JSON file")->required();
    cg->callback([&] {
        action = [&] {
            const auto r = compute_cG(detail::load_datum(datum_path), budget);
            std::ostringstream ss;
            ss << "lower " << r.lower << "\n";
            ss << "certified " << (r.certified_charge ? std::to_string(*r.certified_charge) : std::string("none")) << "\n";
            ss << "exact " << (r.exact ? std::to_string(*r.exact) : std::string("unknown")) << "\n";
            if (r.certificate) ss << detail::certificate_text(*r.certificate);
            return Output{to_json(r), ss.str()};
        };
    });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::CallForAllHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        const Output o = action();
        if (as_json)
            out << o.data.dump(2) << "\n";
        else
            out << o.text;
        return 0;
    } catch (const parse_error& e) {
        err << "parse error: " << e.what() << "\n";
        return 2;
    } catch (const domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const consistency_error& e) {
        err << "internal error: " << e.what() << "\n";
        return 1;
    }
}

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, out, err);
}

} // namespace parahoric::cli
