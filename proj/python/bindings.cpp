#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "rauzy/codec.hpp"
#include "rauzy/digitseq.hpp"
#include "rauzy/error.hpp"
#include "rauzy/generators.hpp"
#include "rauzy/measures.hpp"
#include "rauzy/predictor.hpp"
#include "rauzy/serialize.hpp"

namespace py = pybind11;
using namespace rauzy;

namespace {

py::dict ratio_dict(const BetaRatio& r) {
  py::dict d;
  d["mismatches"] = r.mismatches;
  d["scored"] = r.scored;
  d["value"] = r.value();
  return d;
}

MarkovSpec spec_from(unsigned base, unsigned order, std::vector<double> rho, std::vector<std::vector<double>> P) {
  std::vector<double> flat;
  for (const auto& row : P) {
    if (row.size() != rho.size()) throw DomainError("P must be square with one row per state");
    flat.insert(flat.end(), row.begin(), row.end());
  }
  return make_markov_spec(base, order, std::move(rho), std::move(flat));
}

py::dict spec_dict(const MarkovSpec& s) {
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < s.states(); ++i) {
    rows.emplace_back(s.P.begin() + static_cast<std::ptrdiff_t>(i * s.states()),
                      s.P.begin() + static_cast<std::ptrdiff_t>((i + 1) * s.states()));
  }
  py::dict d;
  d["base"] = s.base;
  d["order"] = s.order;
  d["rho"] = s.rho;
  d["P"] = rows;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Rauzy noise toolkit";

  py::register_exception<RefusalError>(m, "RefusalError", PyExc_RuntimeError);
  py::register_exception<AmbiguityError>(m, "AmbiguityError", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

  py::enum_<Orientation>(m, "Orientation")
      .value("PREDICT_PREVIOUS", Orientation::PredictPrevious)
      .value("PREDICT_NEXT", Orientation::PredictNext);

  py::class_<DigitSeq>(m, "DigitSeq")
      .def(py::init<unsigned, std::vector<Digit>>(), py::arg("base"), py::arg("digits"))
      .def_property_readonly("base", &DigitSeq::base)
      .def("__len__", &DigitSeq::size)
      .def("__getitem__", [](const DigitSeq& s, std::size_t i) {
        if (i >= s.size()) throw py::index_error();
        return s[i];
      })
      .def("tolist", [](const DigitSeq& s) { return std::vector<Digit>(s.digits().begin(), s.digits().end()); })
      .def("prefix", &DigitSeq::prefix)
      .def("reversed", &DigitSeq::reversed)
      .def("__eq__", [](const DigitSeq& a, const DigitSeq& b) { return a == b; })
      .def("__repr__", [](const DigitSeq& s) {
        return "DigitSeq(base=" + std::to_string(s.base()) + ", len=" + std::to_string(s.size()) + ")";
      });

  m.def("expand_rational", &expand_rational, py::arg("p"), py::arg("q"), py::arg("base"), py::arg("n"));
  m.def("champernowne", &champernowne, py::arg("base"), py::arg("n"));
  m.def("uniform_random", &uniform_random, py::arg("base"), py::arg("n"), py::arg("seed"));
  m.def("parse_digits", &parse_digits);
  m.def("format_digits", &format_digits);
  m.def("read_digits", [](const std::string& path) { return read_digits(path); });
  m.def("write_digits", [](const DigitSeq& s, const std::string& path) { write_digits(s, path); });

  // predictor
  m.def(
      "beta_ell",
      [](const DigitSeq& x, unsigned ell, std::optional<std::size_t> n, Orientation o) {
        return ratio_dict(beta_ell(x, ell, n.value_or(x.size()), o).ratio);
      },
      py::arg("x"), py::arg("ell"), py::arg("n") = py::none(), py::arg("orientation") = Orientation::PredictPrevious,
      "Minimal mismatch ratio over all width-ell block functions on the length-n prefix.");
  m.def(
      "beta_ell_bruteforce",
      [](const DigitSeq& x, unsigned ell, std::optional<std::size_t> n, Orientation o, std::uint64_t cap) {
        return ratio_dict(beta_ell_bruteforce(x, ell, n.value_or(x.size()), o, cap));
      },
      py::arg("x"), py::arg("ell"), py::arg("n") = py::none(), py::arg("orientation") = Orientation::PredictPrevious,
      py::arg("cap") = kDefaultEnumerationCap);
  m.def(
      "noise_profile",
      [](const DigitSeq& x, unsigned ell_max, std::vector<std::size_t> grid, Orientation o, double tail_fraction,
         unsigned threads, double tol) {
        ProfileOptions opt{ell_max, std::move(grid), o, tail_fraction, threads};
        const auto prof = noise_profile(x, opt);
        py::dict d;
        d["grid"] = prof.grid;
        py::list entries;
        for (const auto& e : prof.entries) {
          auto r = ratio_dict(e.ratio);
          r["ell"] = e.ell;
          r["N"] = e.prefix_len;
          entries.append(r);
        }
        d["entries"] = entries;
        d["loe"] = prof.loe;
        d["upe"] = prof.upe;
        d["classification"] = to_string(classify(prof, tol));
        return d;
      },
      py::arg("x"), py::arg("ell_max") = 8, py::arg("grid") = std::vector<std::size_t>{},
      py::arg("orientation") = Orientation::PredictPrevious, py::arg("tail_fraction") = 0.5, py::arg("threads") = 1,
      py::arg("tol") = 0.01);

  // generators
  m.def(
      "bernoulli_seq",
      [](std::vector<double> p, std::size_t n, std::uint64_t seed) {
        return bernoulli_seq(make_prob_vector(std::move(p)), n, seed);
      },
      py::arg("p"), py::arg("n"), py::arg("seed"));
  m.def(
      "interleave_mask",
      [](std::vector<bool> mask, const DigitSeq& x, const DigitSeq& y, std::size_t n) {
        return interleave(PositionSet(PeriodicMask{std::move(mask)}), x, y, n);
      },
      py::arg("mask"), py::arg("x"), py::arg("y"), py::arg("n"),
      "Interleave with A = {n : mask[n % len(mask)]}.");
  m.def("rauzy_law", [](unsigned i, double s, unsigned base) { return rauzy_law(i, s, base).p; });
  m.def("markov_seq", [](unsigned base, unsigned order, std::vector<double> rho, std::vector<std::vector<double>> P,
                         std::size_t n, std::uint64_t seed) { return markov_seq(spec_from(base, order, rho, P), n, seed); });

  // codec
  py::class_<CodecParams>(m, "CodecParams")
      .def(py::init([](unsigned base, unsigned k, std::optional<std::uint64_t> ell) { return CodecParams::make(base, k, ell); }),
           py::arg("base"), py::arg("k"), py::arg("ell") = py::none())
      .def_readonly("base", &CodecParams::base)
      .def_readonly("k", &CodecParams::k)
      .def_readonly("ell", &CodecParams::ell)
      .def_readonly("p", &CodecParams::p)
      .def_readonly("w", &CodecParams::w)
      .def_property_readonly("cycle_len", &CodecParams::cycle_len)
      .def_property_readonly("block_len", &CodecParams::block_len);
  m.def("encode_block", [](std::vector<Digit> payload, const CodecParams& cp) { return encode_block(payload, cp); });
  m.def("decode_block", [](std::vector<Digit> block, const CodecParams& cp) { return decode_block(block, cp); });
  m.def("payload_track", &payload_track, py::arg("payload"), py::arg("params"), py::arg("n_blocks"));
  m.def("build_v", &build_v, py::arg("u"), py::arg("params"), py::arg("n_blocks"));
  m.def("verify_block_errors", &verify_block_errors, py::arg("v"), py::arg("params"), py::arg("n_blocks"));
  m.def("codec_beta", [](const DigitSeq& v, const CodecParams& cp) { return ratio_dict(codec_beta(v, cp)); });

  // measures
  m.def("entropy", [](unsigned base, unsigned order, std::vector<double> rho, std::vector<std::vector<double>> P) {
    return entropy(spec_from(base, order, rho, P));
  });
  m.def("measure_noise", [](unsigned base, unsigned order, std::vector<double> rho, std::vector<std::vector<double>> P) {
    return measure_noise(spec_from(base, order, rho, P));
  });
  m.def(
      "stationary",
      [](std::vector<std::vector<double>> P) {
        std::vector<double> flat;
        for (const auto& row : P) flat.insert(flat.end(), row.begin(), row.end());
        return stationary(flat, P.size());
      },
      py::arg("P"));
  m.def("binary_entropy", &binary_entropy);
  m.def("bernoulli_opt", [](unsigned base, double s) {
    const auto r = bernoulli_opt(base, s);
    return py::make_tuple(r.pv.p, r.entropy);
  });
  m.def("dim_bounds", [](unsigned base, double s) {
    const auto r = dim_bounds(base, s);
    py::dict d;
    d["s"] = r.s;
    d["lower"] = r.lower;
    d["upper"] = r.upper;
    d["upper_raw"] = r.upper_raw;
    return d;
  });
  m.def("bounds_csv", [](unsigned base, std::size_t g) { return bounds_csv(dim_bounds_grid(base, g)); });
  m.def(
      "markov_search",
      [](unsigned base, unsigned order, double s, std::size_t budget) {
        const auto r = markov_search(base, order, s, budget);
        py::dict d;
        d["spec"] = spec_dict(r.spec);
        d["entropy"] = r.entropy;
        d["noise"] = r.noise;
        d["evaluations"] = r.evaluations;
        return d;
      },
      py::arg("base"), py::arg("order"), py::arg("s"), py::arg("budget") = 2000);
}
