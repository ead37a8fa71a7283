// Python surface: mirrors the C++ API one-to-one, values crossing as plain
// ints and lists. Oracles keep their instance alive; everything else is
// copied on return.

#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdio>
#include <sstream>

#include "otrforge/attacks.hpp"
#include "otrforge/selftest.hpp"
#include "otrforge/stats.hpp"

namespace py = pybind11;
using namespace otrforge;

namespace {

std::string hex_word(Word v) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "0x%x", v);
    return buf;
}

}  // namespace

PYBIND11_MODULE(_otrforge, m) {
    m.doc() = "Desk-scale OTR forgery laboratory: GF(2^n) arithmetic, toy AEAD "
              "instances, exact period-finding simulation, and the attacks.";

    py::register_exception<DegenerateNonce>(m, "DegenerateNonce", PyExc_ValueError);

    py::class_<FieldSpec>(m, "FieldSpec")
        .def(py::init<int, std::uint32_t>(), py::arg("width"), py::arg("poly"))
        .def_static("standard", &FieldSpec::standard, py::arg("width"))
        .def_readonly("width", &FieldSpec::width)
        .def_readonly("poly", &FieldSpec::poly)
        .def("mask", &FieldSpec::mask)
        .def("element", &FieldSpec::element, py::arg("pattern"))
        .def("zero", &FieldSpec::zero)
        .def("one", &FieldSpec::one)
        .def(py::self == py::self)
        .def("__repr__", [](const FieldSpec& fs) {
            return "FieldSpec(width=" + std::to_string(fs.width) +
                   ", poly=" + hex_word(fs.poly) + ")";
        });

    py::class_<FieldElement>(m, "FieldElement")
        .def(py::init<Word, const FieldSpec&>(), py::arg("value"), py::arg("spec"))
        .def("value", &FieldElement::value)
        .def("spec", &FieldElement::spec)
        .def(py::self + py::self)
        .def(py::self * py::self)
        .def("doubled", &FieldElement::doubled)
        .def("inverse", &FieldElement::inverse)
        .def(py::self == py::self)
        .def("__repr__", [](const FieldElement& e) {
            return "FieldElement(" + hex_word(e.value()) + ", width=" +
                   std::to_string(e.spec().width) + ")";
        });

    py::class_<Permutation>(m, "Permutation")
        .def_static("random", &Permutation::random, py::arg("width"), py::arg("seed"))
        .def_static("from_table", &Permutation::from_table, py::arg("width"),
                    py::arg("forward"))
        .def("apply", &Permutation::apply, py::arg("x"))
        .def("invert", &Permutation::invert, py::arg("y"))
        .def("width", &Permutation::width)
        .def("table", &Permutation::table)
        .def(py::self == py::self);

    py::class_<KeyedCipher>(m, "KeyedCipher")
        .def(py::init<int, std::uint64_t>(), py::arg("width"), py::arg("key"))
        .def("encrypt", &KeyedCipher::encrypt, py::arg("x"))
        .def("width", &KeyedCipher::width)
        .def("key", &KeyedCipher::key)
        .def("permutation", &KeyedCipher::permutation);

    py::class_<EvenMansourCipher>(m, "EvenMansourCipher")
        .def(py::init<Permutation, Word, Word>(), py::arg("permutation"),
             py::arg("k1"), py::arg("k2"))
        .def("encrypt", &EvenMansourCipher::encrypt, py::arg("x"))
        .def("decrypt", &EvenMansourCipher::decrypt, py::arg("y"))
        .def("width", &EvenMansourCipher::width)
        .def("k1", &EvenMansourCipher::k1)
        .def("k2", &EvenMansourCipher::k2)
        .def("permutation", &EvenMansourCipher::permutation);

    py::class_<TaggedCiphertext>(m, "TaggedCiphertext")
        .def(py::init([](Blocks c, Word tag) {
                 return TaggedCiphertext{std::move(c), tag};
             }),
             py::arg("c"), py::arg("tag"))
        .def_readwrite("c", &TaggedCiphertext::c)
        .def_readwrite("tag", &TaggedCiphertext::tag)
        .def(py::self == py::self)
        .def("__repr__", [](const TaggedCiphertext& ct) {
            std::string s = "TaggedCiphertext(c=[";
            for (std::size_t i = 0; i < ct.c.size(); ++i)
                s += (i ? ", " : "") + hex_word(ct.c[i]);
            return s + "], tag=" + hex_word(ct.tag) + ")";
        });

    m.def("tag_coefficient", &tag_coefficient, py::arg("spec"), py::arg("blocks"));

    py::class_<OtrInstance>(m, "OtrInstance")
        .def(py::init<KeyedCipher, FieldSpec, Word>(), py::arg("cipher"),
             py::arg("field"), py::arg("nonce"))
        .def("encrypt", &OtrInstance::encrypt, py::arg("m"))
        .def("decrypt", &OtrInstance::decrypt, py::arg("c"))
        .def("verify", &OtrInstance::verify, py::arg("ct"))
        .def("tag_from_ciphertext", &OtrInstance::tag_from_ciphertext, py::arg("c"))
        .def("delta", &OtrInstance::delta)
        .def("l", &OtrInstance::l)
        .def("lstar", &OtrInstance::lstar)
        .def("nonce", &OtrInstance::nonce)
        .def("cipher", &OtrInstance::cipher)
        .def("field", &OtrInstance::field);

    py::class_<ProstOtrInstance>(m, "ProstOtrInstance")
        .def(py::init<EvenMansourCipher, FieldSpec, Word>(), py::arg("cipher"),
             py::arg("field"), py::arg("nonce"))
        .def("encrypt", &ProstOtrInstance::encrypt, py::arg("m"))
        .def("decrypt", &ProstOtrInstance::decrypt, py::arg("c"))
        .def("verify", &ProstOtrInstance::verify, py::arg("ct"))
        .def("tag_from_ciphertext", &ProstOtrInstance::tag_from_ciphertext,
             py::arg("c"))
        .def("l", &ProstOtrInstance::l)
        .def("nonce", &ProstOtrInstance::nonce)
        .def("cipher", &ProstOtrInstance::cipher)
        .def("field", &ProstOtrInstance::field);

    py::class_<SplitMix64>(m, "SplitMix64")
        .def(py::init<std::uint64_t>(), py::arg("seed"))
        .def("next", &SplitMix64::next)
        .def("next_bits", &SplitMix64::next_bits, py::arg("bits"))
        .def("next_below", &SplitMix64::next_below, py::arg("bound"));

    m.def("trial_seed", &trial_seed, py::arg("master"), py::arg("index"));

    py::class_<BooleanFunctionTable>(m, "BooleanFunctionTable")
        .def(py::init<int, std::vector<Word>>(), py::arg("n"), py::arg("values"))
        .def_readonly("n", &BooleanFunctionTable::n)
        .def_readonly("values", &BooleanFunctionTable::values)
        .def("__call__", &BooleanFunctionTable::operator(), py::arg("x"))
        .def("__len__", &BooleanFunctionTable::size)
        .def("is_constant", &BooleanFunctionTable::is_constant);

    py::class_<PeriodResult>(m, "PeriodResult")
        .def_readonly("period", &PeriodResult::period)
        .def_readonly("queries", &PeriodResult::queries)
        .def_readonly("verified", &PeriodResult::verified);

    m.def("simon_sample", &simon_sample, py::arg("f"), py::arg("rng"));
    m.def("recover_period", &recover_period, py::arg("f"), py::arg("rng"),
          py::arg("max_queries") = 0);
    m.def("brute_force_periods", &brute_force_periods, py::arg("f"));
    m.def("planted_period_table", &planted_period_table, py::arg("n"), py::arg("s"),
          py::arg("rng"));
    m.def("prob_lower_bound", &prob_lower_bound, py::arg("n"), py::arg("c"));
    m.def("chi_square_pvalue", &chi_square_pvalue, py::arg("stat"), py::arg("dof"));

    auto oracle = py::class_<TagOracle>(m, "TagOracle")
                      .def("mode", &TagOracle::mode)
                      .def("width", &TagOracle::width)
                      .def("query", &TagOracle::query, py::arg("blocks"))
                      .def("calls", &TagOracle::calls);

    py::enum_<TagOracle::Mode>(oracle, "Mode")
        .value("CiphertextInput", TagOracle::Mode::CiphertextInput)
        .value("PlaintextInput", TagOracle::Mode::PlaintextInput);

    py::class_<OtrTagOracle, TagOracle>(m, "OtrTagOracle")
        .def(py::init<const OtrInstance&, TagOracle::Mode>(), py::arg("instance"),
             py::arg("mode"), py::keep_alive<1, 2>());

    py::class_<ProstTagOracle, TagOracle>(m, "ProstTagOracle")
        .def(py::init<const ProstOtrInstance&, TagOracle::Mode>(), py::arg("instance"),
             py::arg("mode"), py::keep_alive<1, 2>());

    m.def("tag_swap_table", &tag_swap_table, py::arg("ct"), py::arg("oracle"),
          py::arg("pos_a"), py::arg("pos_b"));

    py::class_<ForgeryOutcome>(m, "ForgeryOutcome")
        .def_readonly("original", &ForgeryOutcome::original)
        .def_readonly("forged", &ForgeryOutcome::forged)
        .def_readonly("period", &ForgeryOutcome::period)
        .def_readonly("queries", &ForgeryOutcome::queries)
        .def_readonly("verified", &ForgeryOutcome::verified)
        .def_readonly("distinct", &ForgeryOutcome::distinct);

    m.def("forge_otr", &forge_otr, py::arg("ct"), py::arg("oracle"), py::arg("rng"),
          py::arg("max_queries_per_recovery") = 0);
    m.def("forge_otr_d4", &forge_otr_d4, py::arg("ct"), py::arg("oracle"),
          py::arg("rng"), py::arg("max_queries_per_recovery") = 0);

    m.def(
        "mask_gap_table",
        [](const TagOracle& oracle, Word c, Word filler1, Word filler3) {
            return mask_gap_table(oracle, c, filler1, filler3);
        },
        py::arg("oracle"), py::arg("c"), py::arg("filler1"), py::arg("filler3"));
    m.def(
        "whitening_gap_table",
        [](const TagOracle& oracle, const Permutation& p, const FieldElement& l,
           Word filler1) { return whitening_gap_table(oracle, p, l, filler1); },
        py::arg("oracle"), py::arg("public_perm"), py::arg("l"), py::arg("filler1"));

    py::class_<ProstKeyRecovery>(m, "ProstKeyRecovery")
        .def_readonly("l", &ProstKeyRecovery::l)
        .def_readonly("k1", &ProstKeyRecovery::k1)
        .def_readonly("k2", &ProstKeyRecovery::k2)
        .def_readonly("gap_period", &ProstKeyRecovery::gap_period)
        .def_readonly("gap_constant", &ProstKeyRecovery::gap_constant)
        .def_readonly("queries", &ProstKeyRecovery::queries)
        .def_readonly("verified", &ProstKeyRecovery::verified)
        .def_readonly("exact", &ProstKeyRecovery::exact);

    m.def("recover_prost_keys", &recover_prost_keys, py::arg("oracle"),
          py::arg("public_perm"), py::arg("field"), py::arg("nonce"), py::arg("rng"),
          py::arg("max_queries_per_recovery") = 0);
    m.def("universal_forge", &universal_forge, py::arg("m"), py::arg("nonce"),
          py::arg("recovery"), py::arg("public_perm"), py::arg("field"));

    m.def(
        "selftest",
        [](std::optional<std::uint32_t> coeff4_override, std::uint64_t seed) {
            SelftestOptions opts;
            opts.coeff4_override = coeff4_override;
            opts.seed = seed;
            std::ostringstream os;
            const int failures = selftest(os, opts);
            return py::make_tuple(failures, os.str());
        },
        py::arg("coeff4_override") = std::nullopt,
        py::arg("seed") = std::uint64_t{0x5e1f7e57},
        "Runs the invariant checks; returns (failures, report_text).");
}
