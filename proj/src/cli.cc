// Copyright 2026 The nsumbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "nsumbox/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "nsumbox/error.hpp"
#include "nsumbox/json_io.hpp"
#include "nsumbox/qoracle.hpp"
#include "nsumbox/symplectic.hpp"

namespace nsumbox::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot open " + path);
    }
    try {
        return Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw UsageError(path + ": " + e.what());
    }
}

std::vector<Elem> parse_elems(const std::string &csv) {
    std::vector<Elem> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            unsigned long v = std::stoul(tok, &used);
            if (used != tok.size()) {
                throw std::invalid_argument(tok);
            }
            out.push_back(static_cast<Elem>(v));
        } catch (const std::logic_error &) {
            throw UsageError("bad element list: " + csv);
        }
    }
    return out;
}

std::uint64_t default_seed() {
    const char *env = std::getenv("NSUMBOX_SEED");
    if (env == nullptr || *env == '\0') {
        return 0;
    }
    try {
        return std::stoull(env);
    } catch (const std::logic_error &) {
        throw UsageError(std::string("NSUMBOX_SEED is not an integer: ") + env);
    }
}

Json standard_form_json(const StandardForm &sf) {
    return Json{{"s", matrix_to_json(sf.s)}, {"p", matrix_to_json(sf.p)}, {"lambda", matrix_to_json(sf.lambda.matrix())}};
}

}  // namespace

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err) {
    CLI::App app{"N-sum box toolkit"};
    app.require_subcommand(1);
    std::uint64_t seed = 0;
    std::string path;
    std::string h_path;
    std::string x_csv, a1_csv, a2_csv;
    bool strict = false, exhaustive = false, symmetric = false;
    size_t trials = 200;
    std::uint32_t p = 0, r = 0;

    auto *field = app.add_subcommand("field", "field utilities")->require_subcommand(1);
    auto *field_info = field->add_subcommand("info", "modulus and size of GF(p^r)");
    field_info->add_option("p", p)->required();
    field_info->add_option("r", r)->required();

    auto *sso = app.add_subcommand("sso", "SSO checks")->require_subcommand(1);
    auto *sso_check = sso->add_subcommand("check", "is the 2N x N matrix SSO");
    sso_check->add_option("matrix", path)->required();

    auto *complete = app.add_subcommand("complete", "symplectic completion of an SSO matrix");
    complete->add_option("g", path)->required();

    auto *stdform = app.add_subcommand("standard-form", "P (I|S) Lambda factorization of an N x 2N matrix");
    stdform->add_option("m", path)->required();

    auto *feasible = app.add_subcommand("feasible", "search a diagonal Delta making (M_l | M_r Delta) SSO");
    feasible->add_option("m", path)->required();

    auto *box = app.add_subcommand("box", "N-sum box construction and evaluation")->require_subcommand(1);
    auto *box_build = box->add_subcommand("build", "box spec from G and optional H");
    box_build->add_option("g", path)->required();
    box_build->set_help_flag("--help", "Print this help message and exit");
    box_build->add_option("--h", h_path, "H completion matrix");
    auto *box_eval = box->add_subcommand("eval", "classical evaluation");
    box_eval->add_option("spec", path)->required();
    box_eval->add_option("--x", x_csv, "comma-separated 2N inputs")->required();
    box_eval->add_option("--seed", seed);
    box_eval->add_flag("--strict", strict, "omit the discarded digits");

    auto *oracle = app.add_subcommand("oracle", "quantum state-vector oracle")->require_subcommand(1);
    auto *certify_cmd = oracle->add_subcommand("certify", "compare the simulated box against its transfer matrix");
    certify_cmd->add_option("spec", path)->required();
    auto *ex_flag = certify_cmd->add_flag("--exhaustive", exhaustive);
    certify_cmd->add_option("--trials", trials)->excludes(ex_flag);
    certify_cmd->add_option("--seed", seed);

    auto *qcsa = app.add_subcommand("qcsa", "QCSA boxes")->require_subcommand(1);
    auto *qcsa_build = qcsa->add_subcommand("build", "box from QCSA parameters");
    qcsa_build->add_option("params", path)->required();
    qcsa_build->add_flag("--symmetric", symmetric);
    auto *qcsa_decode = qcsa->add_subcommand("decode", "over-the-air decoding of two answer vectors");
    qcsa_decode->add_option("params", path)->required();
    qcsa_decode->add_option("--a1", a1_csv)->required();
    qcsa_decode->add_option("--a2", a2_csv)->required();
    qcsa_decode->add_flag("--symmetric", symmetric);
    qcsa_decode->add_option("--seed", seed);

    auto *demo = app.add_subcommand("demo", "rate demonstrations")->require_subcommand(1);
    auto *demo_pir = demo->add_subcommand("pir", "MDS-coded X-secure T-private retrieval");
    demo_pir->add_option("params", path)->required();
    demo_pir->add_option("--seed", seed);
    demo_pir->add_flag("--symmetric", symmetric);
    auto *demo_sdbmm = demo->add_subcommand("sdbmm", "secure distributed batch matrix multiplication");
    demo_sdbmm->add_option("params", path)->required();
    demo_sdbmm->add_option("--seed", seed);

    try {
        seed = default_seed();
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    auto emit = [&](const Json &j) { out << j.dump(2) << "\n"; };
    try {
        if (*field_info) {
            Field f = Field::make(p, r);
            Json j = field_to_json(f);
            j["q"] = f.q();
            j["name"] = f.name();
            emit(j);
            return 0;
        }
        if (*sso_check) {
            bool ok = is_sso(matrix_from_json(read_json(path)));
            emit(Json{{"sso", ok}});
            return ok ? 0 : 1;
        }
        if (*complete) {
            emit(matrix_to_json(symplectic_complete(matrix_from_json(read_json(path)))));
            return 0;
        }
        if (*stdform) {
            emit(standard_form_json(to_standard_form(matrix_from_json(read_json(path)))));
            return 0;
        }
        if (*feasible) {
            Feasibility res = lit_feasibility(matrix_from_json(read_json(path)));
            if (!res.delta) {
                emit(Json{{"feasible", false}, {"exhaustive", res.exhaustive}});
                return 1;
            }
            std::vector<Elem> diag;
            for (size_t i = 0; i < res.delta->rows(); i++) {
                diag.push_back((*res.delta)(i, i));
            }
            emit(Json{{"feasible", true}, {"delta", diag}});
            return 0;
        }
        if (*box_build) {
            MatrixFq g = matrix_from_json(read_json(path));
            std::optional<MatrixFq> h;
            if (!h_path.empty()) {
                h = matrix_from_json(read_json(h_path), g.field());
            }
            emit(spec_to_json(build_box(g, h)));
            return 0;
        }
        if (*box_eval) {
            SumBoxSpec spec = spec_from_json(read_json(path));
            BoxOutput res = evaluate(spec, parse_elems(x_csv), seed, strict);
            emit(Json{{"digits", res.digits}, {"discarded", res.discarded}, {"seed", res.seed_used}});
            return 0;
        }
        if (*certify_cmd) {
            SumBoxSpec spec = spec_from_json(read_json(path));
            CertifyMode mode = exhaustive ? CertifyMode::all_inputs() : CertifyMode::random(trials, seed);
            CertifyReport rep = certify(spec, mode);
            emit(Json{{"pass", rep.pass},
                      {"tested", rep.tested},
                      {"max_prob_defect", rep.max_prob_defect},
                      {"offset", rep.offset}});
            return rep.pass ? 0 : 1;
        }
        if (*qcsa_build) {
            QcsaParams params = qcsa_params_from_json(read_json(path));
            if (symmetric) {
                SymmetricBox sb = symmetric_box(params);
                emit(Json{{"params", qcsa_params_to_json(sb.params)},
                          {"spec", spec_to_json(sb.spec)},
                          {"u", sb.u},
                          {"v", sb.v}});
            } else {
                emit(qcsa_box_to_json(qcsa_box(params)));
            }
            return 0;
        }
        if (*qcsa_decode) {
            QcsaParams params = qcsa_params_from_json(read_json(path));
            std::vector<Elem> a1 = parse_elems(a1_csv), a2 = parse_elems(a2_csv);
            if (symmetric) {
                SymmetricOutput res = symmetric_decode(symmetric_box(params), a1, a2, seed);
                emit(Json{{"delta1", res.delta1}, {"delta2", res.delta2}, {"discarded", res.discarded}});
            } else {
                OtaOutput res = over_the_air_decode(qcsa_box(params), a1, a2);
                emit(Json{{"delta1", res.delta1},
                          {"nu1_tail", res.nu1_tail},
                          {"delta2", res.delta2},
                          {"nu2_tail", res.nu2_tail}});
            }
            return 0;
        }
        if (*demo_pir) {
            PirParams params = pir_params_from_json(read_json(path));
            DemoReport rep = run_pir_demo(params, seed, symmetric);
            emit(report_to_json(rep, pir_params_to_json(params)));
            return rep.recovered_ok ? 0 : 1;
        }
        if (*demo_sdbmm) {
            SdbmmParams params = sdbmm_params_from_json(read_json(path));
            DemoReport rep = run_sdbmm_demo(params, seed);
            emit(report_to_json(rep, sdbmm_params_to_json(params)));
            return rep.recovered_ok ? 0 : 1;
        }
    } catch (const UsageError &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no command\n";
    return 2;
}

}  // namespace nsumbox::cli
