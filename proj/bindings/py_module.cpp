// Python bindings for the wave-representation classifier: the complex
// token-representation operations, the verification suites, and thin
// train/evaluate entry points.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <complex>
#include <cstring>
#include <filesystem>

#include "wavenet/bench.hpp"
#include "wavenet/checkpoint.hpp"
#include "wavenet/train.hpp"
#include "wavenet/verify.hpp"

namespace py = pybind11;
using namespace wavenet;

namespace {

Tensor tensor_from_2d(const py::array_t<double, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D float64 array");
    Tensor t({static_cast<int>(arr.shape(0)), static_cast<int>(arr.shape(1))});
    std::memcpy(t.data.data(), arr.data(), t.numel() * sizeof(double));
    return t;
}

Tensor mask_or_ones(const py::object& mask, int n) {
    if (mask.is_none()) {
        Tensor m({n});
        m.fill(1.0);
        return m;
    }
    const auto arr = py::cast<py::array_t<double, py::array::c_style | py::array::forcecast>>(mask);
    if (arr.ndim() != 1 || static_cast<int>(arr.shape(0)) != n)
        throw std::invalid_argument("mask must be a 1-D array matching the token count");
    Tensor m({n});
    std::memcpy(m.data.data(), arr.data(), m.numel() * sizeof(double));
    return m;
}

py::array_t<double> to_numpy_1d(const Tensor& t) {
    py::array_t<double> out(t.numel());
    std::memcpy(out.mutable_data(), t.data.data(), t.numel() * sizeof(double));
    return out;
}

py::array_t<double> to_numpy_2d(const Tensor& t) {
    py::array_t<double> out({t.rows(), t.cols()});
    std::memcpy(out.mutable_data(), t.data.data(), t.numel() * sizeof(double));
    return out;
}

py::array_t<std::complex<double>> pair_to_complex(const ComplexRepr& z) {
    py::array_t<std::complex<double>> out({z.re.rows(), z.re.cols()});
    auto view = out.mutable_unchecked<2>();
    for (int j = 0; j < z.re.rows(); ++j)
        for (int k = 0; k < z.re.cols(); ++k) view(j, k) = {z.re.at(j, k), z.im.at(j, k)};
    return out;
}

ComplexRepr complex_to_pair(const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& arr) {
    if (arr.ndim() != 2) throw std::invalid_argument("expected a 2-D complex128 array");
    const int n = static_cast<int>(arr.shape(0)), d = static_cast<int>(arr.shape(1));
    ComplexRepr z{Tensor({n, d}), Tensor({n, d})};
    auto view = arr.unchecked<2>();
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < d; ++k) {
            z.re.at(j, k) = view(j, k).real();
            z.im.at(j, k) = view(j, k).imag();
        }
    return z;
}

py::dict suite_to_dict(const SuiteResult& r) {
    py::dict d;
    d["name"] = r.name;
    d["passed"] = r.passed;
    d["max_err"] = r.max_err;
    d["tolerance"] = r.tolerance;
    d["seed"] = r.seed;
    d["seconds"] = r.seconds;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "complex-vector token representations with wave interference and modulation";

    m.def(
        "global_semantics",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& emb, const py::object& mask) {
            const Tensor e = tensor_from_2d(emb);
            return to_numpy_1d(global_semantics(e, mask_or_ones(mask, e.rows())));
        },
        py::arg("embeddings"), py::arg("mask") = py::none(),
        "Column-wise masked L2 norm of the token embeddings (the shared magnitude vector).");

    m.def(
        "phase_matrix",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& emb, const py::object& mask) {
            const Tensor e = tensor_from_2d(emb);
            const Tensor m = mask_or_ones(mask, e.rows());
            return to_numpy_2d(phase_matrix(e, global_semantics(e, m), m));
        },
        py::arg("embeddings"), py::arg("mask") = py::none(),
        "Per-token phases in [0, pi] relative to the shared magnitude vector.");

    m.def(
        "to_complex",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& emb, const py::object& mask) {
            const Tensor e = tensor_from_2d(emb);
            const Tensor m = mask_or_ones(mask, e.rows());
            return pair_to_complex(to_complex(e, global_semantics(e, m), m));
        },
        py::arg("embeddings"), py::arg("mask") = py::none(),
        "Complex token representation: re = embedding, im = excluded-token root.");

    m.def(
        "interfere",
        [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& z,
           const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& zp) {
            return pair_to_complex(interfere(complex_to_pair(z), complex_to_pair(zp)));
        },
        py::arg("z"), py::arg("z_prime"), "Componentwise complex addition.");

    m.def(
        "modulate",
        [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& z,
           const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& zp) {
            return pair_to_complex(modulate(complex_to_pair(z), complex_to_pair(zp)));
        },
        py::arg("z"), py::arg("z_prime"), "Componentwise complex multiplication.");

    m.def(
        "interference_intensity",
        [](const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& z,
           const py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>& zp) {
            const Intensity in = interference_intensity(complex_to_pair(z), complex_to_pair(zp));
            return py::make_tuple(to_numpy_2d(in.self), to_numpy_2d(in.other), to_numpy_2d(in.cross));
        },
        py::arg("z"), py::arg("z_prime"), "(|Z|^2, |Z'|^2, 2 Re(Z conj(Z'))).");

    m.def(
        "polar_oracle_combine",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& e1,
           const py::array_t<double, py::array::c_style | py::array::forcecast>& e2, const std::string& mode,
           const py::object& mask) {
            const Tensor a = tensor_from_2d(e1);
            const Tensor b = tensor_from_2d(e2);
            return pair_to_complex(
                polar_oracle_combine(a, b, combine_mode_from_string(mode), mask_or_ones(mask, a.rows())));
        },
        py::arg("embeddings"), py::arg("embeddings_prime"), py::arg("mode"), py::arg("mask") = py::none(),
        "Combine two embedding matrices through the explicit polar construction (verification path).");

    m.def(
        "positional_encoding",
        [](int max_len, int d) { return to_numpy_2d(positional_encoding(max_len, d)); }, py::arg("max_len"),
        py::arg("d"));

    m.def(
        "verify",
        [](const std::string& suite, std::uint64_t seed) {
            py::list out;
            for (const auto& r : run_suites(suite, seed)) out.append(suite_to_dict(r));
            return out;
        },
        py::arg("suite") = "all", py::arg("seed") = 20250810,
        "Run the numerical verification suites; returns one report dict per suite.");

    m.def(
        "train",
        [](const std::string& train_csv, const std::string& test_csv, const std::string& dataset,
           const std::string& out_dir, int d, int n_layers, const std::string& combine_mode, double dropout_p,
           int max_len, double lr, int batch_size, int epochs, std::uint64_t seed, int subset, int vocab_min_freq,
           int vocab_max_size) {
            DatasetSpec data;
            data.train_path = train_csv;
            data.test_path = test_csv;
            data.schema = DatasetSchema::builtin(dataset);
            data.subset = subset;
            data.vocab_min_freq = vocab_min_freq;
            data.vocab_max_size = vocab_max_size;

            ModelConfig mcfg;
            mcfg.d = d;
            mcfg.n_layers = n_layers;
            mcfg.combine_mode = combine_mode_from_string(combine_mode);
            mcfg.dropout_p = dropout_p;
            mcfg.max_len = max_len;
            mcfg.n_classes = data.schema.n_classes;
            mcfg.seed = seed;

            TrainConfig tcfg;
            tcfg.lr = lr;
            tcfg.batch_size = batch_size;
            tcfg.epochs = epochs;
            tcfg.seed = seed;

            TrainRunResult result = train_run(mcfg, tcfg, data, nullptr);

            if (!out_dir.empty()) {
                std::filesystem::create_directories(out_dir);
                result.vocab.save(out_dir + "/vocab.txt");
                write_metrics_csv(out_dir + "/metrics.csv", result.history);
                Checkpoint ckpt = std::move(result.best);
                ckpt.vocab_file = "vocab.txt";
                save_checkpoint(out_dir + "/model.wvnt", ckpt);
            }

            py::dict out;
            out["test_accuracy"] = result.final_test_accuracy;
            out["test_loss"] = result.final_test_loss;
            out["best_val_accuracy"] = result.best_val_accuracy;
            out["best_epoch"] = result.best_epoch;
            out["vocab_size"] = result.vocab.size();
            out["param_count"] = result.best.params.param_count();
            out["skipped_steps"] = result.skipped_steps;
            return out;
        },
        py::arg("train_csv"), py::arg("test_csv"), py::arg("dataset"), py::arg("out_dir") = "", py::arg("d") = 128,
        py::arg("n_layers") = 1, py::arg("combine_mode") = "modulation", py::arg("dropout_p") = 0.1,
        py::arg("max_len") = 128, py::arg("lr") = 1e-3, py::arg("batch_size") = 64, py::arg("epochs") = 4,
        py::arg("seed") = 1, py::arg("subset") = 0, py::arg("vocab_min_freq") = 2, py::arg("vocab_max_size") = 30000,
        "Full training protocol on a CSV dataset; writes model.wvnt/vocab.txt/metrics.csv when out_dir is given.");

    m.def(
        "evaluate",
        [](const std::string& checkpoint_path, const std::string& csv_path, const std::string& dataset) {
            const Checkpoint ckpt = load_checkpoint(checkpoint_path);
            const auto vocab_path =
                std::filesystem::path(checkpoint_path).parent_path() / ckpt.vocab_file;
            const Vocab vocab = Vocab::load(vocab_path.string());
            if (vocab.size() != ckpt.config.vocab_size)
                throw ArtifactError("vocab/checkpoint size mismatch");
            const auto rows = load_csv(csv_path, DatasetSchema::builtin(dataset));
            const auto encoded = encode_all(rows, vocab, ckpt.config.max_len);
            const EvalResult eval = evaluate_split(ckpt.params, ckpt.config, encoded, 64);
            return py::make_tuple(eval.loss, eval.accuracy);
        },
        py::arg("checkpoint"), py::arg("csv"), py::arg("dataset"),
        "Score a saved checkpoint on a CSV dataset; returns (loss, accuracy).");

    m.def(
        "bench",
        [](int d, const std::string& combine_mode, int n_batches, int batch_size, int seq_len) {
            ModelConfig cfg;
            cfg.d = d;
            cfg.vocab_size = 30000;
            cfg.n_classes = 4;
            cfg.combine_mode = combine_mode_from_string(combine_mode);
            cfg.max_len = seq_len;
            const BenchReport r = bench_layer(cfg, n_batches, batch_size, seq_len);
            py::dict out;
            out["mode"] = r.mode;
            out["fwd_tok_per_s"] = r.fwd_tok_per_s;
            out["fwdbwd_tok_per_s"] = r.fwdbwd_tok_per_s;
            out["param_count"] = r.param_count;
            return out;
        },
        py::arg("d") = 128, py::arg("combine_mode") = "modulation", py::arg("n_batches") = 5,
        py::arg("batch_size") = 32, py::arg("seq_len") = 32);
}
