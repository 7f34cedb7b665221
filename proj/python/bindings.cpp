#include "bpa/decomposition.hpp"
#include "bpa/equivalence.hpp"
#include "bpa/errors.hpp"
#include "bpa/game.hpp"
#include "bpa/lts.hpp"
#include "bpa/normed.hpp"
#include "bpa/system.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>

namespace py = pybind11;
using namespace bpa;

namespace {

struct PySystem {
    AnalyzedSystem sys;
    std::shared_ptr<EqLevelOracle> oracle;

    explicit PySystem(AnalyzedSystem s) : sys(std::move(s)), oracle(std::make_shared<EqLevelOracle>(sys)) {}

    RegularString str(const std::string& text) const {
        return truncate_unnormed(sys.system().parse_string(text), sys.norms());
    }
    std::string fmt(const RegularString& x) const { return sys.system().format(x); }
};

PySystem load(const std::string& text, bool complete) {
    BpaSystem s = parse_system(text);
    if (complete) s = complete_dead(s);
    return PySystem(AnalyzedSystem(std::move(s)));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Bisimilarity tools for Basic Process Algebra";

    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<ContractViolation>(m, "ContractViolation", PyExc_ValueError);
    py::register_exception<InternalError>(m, "InternalError", PyExc_RuntimeError);
    py::register_exception<MemoCapExceeded>(m, "MemoCapExceeded", PyExc_RuntimeError);
    py::register_exception<IllegalMove>(m, "IllegalMove", PyExc_ValueError);

    m.def("canonicalize", [](const std::vector<std::string>& prefix, const std::vector<std::string>& cycle) {
        std::vector<std::string> names;
        std::map<std::string, Nt> ids;
        auto id = [&](const std::string& s) {
            auto [it, fresh] = ids.emplace(s, Nt{static_cast<std::uint32_t>(names.size())});
            if (fresh) names.push_back(s);
            return it->second;
        };
        Word p, c;
        for (const auto& s : prefix) p.push_back(id(s));
        for (const auto& s : cycle) c.push_back(id(s));
        RegularString r = canonicalize(p, c);
        std::vector<std::string> rp, rc;
        for (Nt n : r.prefix()) rp.push_back(names[index(n)]);
        for (Nt n : r.cycle()) rc.push_back(names[index(n)]);
        return py::make_tuple(rp, rc);
    }, py::arg("prefix"), py::arg("cycle"));

    py::class_<PySystem>(m, "System")
        .def_property_readonly("nonterminals", [](const PySystem& s) { return s.sys.system().nonterminal_names(); })
        .def_property_readonly("actions", [](const PySystem& s) { return s.sys.system().action_names(); })
        .def("serialize", [](const PySystem& s) { return serialize_system(s.sys.system()); })
        .def("norms", [](const PySystem& s) {
            py::dict d;
            const auto& names = s.sys.system().nonterminal_names();
            for (std::size_t i = 0; i < names.size(); ++i) {
                const ExtNat& n = s.sys.norms()[Nt{static_cast<std::uint32_t>(i)}];
                if (n.is_omega()) {
                    d[py::str(names[i])] = py::none();
                } else {
                    d[py::str(names[i])] = py::int_(py::str(n.value().str()));
                }
            }
            return d;
        }, "Norm per nonterminal; None stands for omega.")
        .def("constants", [](const PySystem& s) {
            const auto& c = s.sys.constants();
            py::dict d;
            d["M"] = py::int_(py::str(c.max_norm.str()));
            d["M_rhs"] = py::int_(py::str(c.max_rhs_norm.str()));
            d["S_rhs"] = py::int_(py::str(c.max_rhs_size.str()));
            d["E"] = py::int_(py::str(c.cycle_bound.str()));
            return d;
        })
        .def("canonical", [](const PySystem& s, const std::string& x) { return s.fmt(s.str(x)); })
        .def("transitions", [](const PySystem& s, const std::string& x) {
            std::vector<std::pair<std::string, std::string>> out;
            for (const auto& t : transitions(s.sys, s.str(x))) out.emplace_back(s.sys.system().name(t.action), s.fmt(t.target));
            return out;
        })
        .def("norm_reducing_path", [](const PySystem& s, const std::string& x, std::size_t steps) {
            PathWitness w = norm_reducing_path(s.sys, s.str(x), steps);
            std::vector<std::string> acts, states;
            for (Act a : w.actions) acts.push_back(s.sys.system().name(a));
            for (const auto& st : w.states) states.push_back(s.fmt(st));
            return py::make_tuple(acts, states);
        })
        .def("eqlevel", [](PySystem& s, const std::string& x, const std::string& y, std::size_t depth) {
            EqLevelResult r = s.oracle->eqlevel(s.str(x), s.str(y), depth);
            return py::make_tuple(r.is_exact() ? "Exact" : "AtLeast", r.level());
        }, py::arg("x"), py::arg("y"), py::arg("depth"))
        .def("decide_normed", [](PySystem& s, const std::string& x, const std::string& y) {
            NormedVerdict v = decide_normed(*s.oracle, s.sys.system().parse_string(x), s.sys.system().parse_string(y));
            const char* kind = v.kind == NormedVerdict::Kind::Bisimilar      ? "Bisimilar"
                               : v.kind == NormedVerdict::Kind::NotBisimilar ? "NotBisimilar"
                                                                             : "Inconclusive";
            return py::make_tuple(kind, v.level);
        })
        .def("prover_decompositions", [](PySystem& s, const std::string& x, const std::string& y, std::size_t depth) {
            std::vector<std::string> out;
            for (const auto& d : prover_decompositions(*s.oracle, {s.str(x), s.str(y)}, depth)) {
                out.push_back(serialize_decomposition(s.sys.system(), d));
            }
            return out;
        })
        .def("check_decomposition", [](const PySystem& s, const std::string& x, const std::string& y, const std::string& block) {
            return check_decomposition(s.sys, {s.str(x), s.str(y)}, parse_decomposition(s.sys.system(), block));
        })
        .def("yield_delta", [](PySystem& s, const std::string& a1, const std::string& a2, const std::string& beta, std::size_t depth) {
            YieldDeltaResult r = yield_delta(*s.oracle, s.str(a1), s.str(a2), s.str(beta), depth);
            py::object delta = r.delta ? py::object(py::str(s.fmt(*r.delta))) : py::object(py::none());
            return py::make_tuple(delta, r.trace, r.inconclusive);
        })
        .def("play", [](PySystem& s, const std::string& x, const std::string& y, const std::string& prover,
                        const std::string& refuter, std::size_t max_phases, std::size_t depth, std::uint64_t seed) {
            CompleteProver cp(*s.oracle, depth);
            RandomProver rp(*s.oracle, seed);
            SoundRefuter sr(*s.oracle, depth);
            RandomRefuter rr(s.sys, seed);
            ProverStrategy* p = prover == "random" ? static_cast<ProverStrategy*>(&rp) : &cp;
            RefuterStrategy* r = refuter == "random" ? static_cast<RefuterStrategy*>(&rr) : &sr;
            GameTranscript t = run_game(s.sys, {s.str(x), s.str(y)}, *p, *r, max_phases, default_params(s.sys));
            return py::make_tuple(verdict_name(t.verdict), serialize_transcript(s.sys.system(), t));
        }, py::arg("x"), py::arg("y"), py::arg("prover") = "complete", py::arg("refuter") = "sound",
           py::arg("max_phases") = 50, py::arg("depth") = 8, py::arg("seed") = 1)
        .def("replay", [](const PySystem& s, const std::string& text) {
            GameTranscript t = parse_transcript(s.sys, text);
            return serialize_transcript(s.sys.system(), t);
        })
        .def("solve", [](const PySystem& s, const std::string& x, const std::string& y, std::size_t max_configs) {
            SolveResult r = solve_game(s.sys, {s.str(x), s.str(y)}, default_params(s.sys).pair_space, max_configs);
            return py::make_tuple(solve_verdict_name(r.verdict), r.configurations);
        }, py::arg("x"), py::arg("y"), py::arg("max_configs") = 20000);

    m.def("parse_system", &load, py::arg("text"), py::arg("complete_dead") = false,
          "Parses and validates a grammar, optionally completing dead nonterminals first.");
}
