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

#include "nsumbox/json_io.hpp"

#include "nsumbox/error.hpp"

namespace nsumbox {

namespace {

template <typename F>
auto guarded(const char *what, F &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const Json::exception &e) {
        throw Error(ErrorCode::kInvalidSpec, std::string(what) + ": " + e.what());
    }
}

std::vector<Elem> elems_from_json(const Json &j, const Field &field) {
    std::vector<Elem> out = j.get<std::vector<Elem>>();
    for (auto e : out) {
        if (!field.contains(e)) {
            throw Error(ErrorCode::kInvalidSpec, "element " + std::to_string(e) + " not in " + field.name());
        }
    }
    return out;
}

std::optional<Field> optional_field(const Json &j) {
    if (j.contains("field")) {
        return field_from_json(j.at("field"));
    }
    return std::nullopt;
}

}  // namespace

Json field_to_json(const Field &field) {
    return Json{{"p", field.p()}, {"r", field.r()}, {"modulus", field.modulus()}};
}

Field field_from_json(const Json &j) {
    return guarded("field", [&] {
        auto p = j.at("p").get<std::uint32_t>();
        auto r = j.at("r").get<std::uint32_t>();
        if (!j.contains("modulus")) {
            return Field::make(p, r);
        }
        auto mod = j.at("modulus").get<std::vector<std::uint32_t>>();
        if (mod.size() != r + 1) {
            throw Error(ErrorCode::kInvalidSpec, "modulus must have r+1 coefficients");
        }
        return Field::with_modulus(p, std::move(mod));
    });
}

Json matrix_to_json(const MatrixFq &m, bool with_field) {
    Json rows = Json::array();
    for (size_t i = 0; i < m.rows(); i++) {
        rows.push_back(m.row(i));
    }
    Json j{{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
    if (with_field) {
        j["field"] = field_to_json(m.field());
    }
    return j;
}

MatrixFq matrix_from_json(const Json &j, const std::optional<Field> &field) {
    return guarded("matrix", [&] {
        std::optional<Field> own = optional_field(j);
        if (own && field && !(*own == *field)) {
            throw Error(ErrorCode::kFieldMismatch, "matrix field differs from enclosing field");
        }
        if (!own && !field) {
            throw Error(ErrorCode::kInvalidSpec, "matrix has no field");
        }
        Field f = own ? *own : *field;
        auto rows = j.at("rows").get<size_t>();
        auto cols = j.at("cols").get<size_t>();
        const Json &data = j.at("data");
        if (!data.is_array() || data.size() != rows) {
            throw Error(ErrorCode::kInvalidSpec, "data must hold `rows` rows");
        }
        MatrixFq m(f, rows, cols);
        for (size_t i = 0; i < rows; i++) {
            std::vector<Elem> row = elems_from_json(data[i], f);
            if (row.size() != cols) {
                throw Error(ErrorCode::kInvalidSpec, "row " + std::to_string(i) + " has wrong length");
            }
            for (size_t c = 0; c < cols; c++) {
                m.set(i, c, row[c]);
            }
        }
        return m;
    });
}

Json spec_to_json(const SumBoxSpec &spec) {
    return Json{{"field", field_to_json(spec.field)},
                {"n", spec.n},
                {"kappa", spec.kappa},
                {"g", matrix_to_json(spec.g, false)},
                {"h", matrix_to_json(spec.h, false)},
                {"m", matrix_to_json(spec.m, false)}};
}

SumBoxSpec spec_from_json(const Json &j) {
    return guarded("spec", [&] {
        Field f = field_from_json(j.at("field"));
        MatrixFq g = matrix_from_json(j.at("g"), f);
        MatrixFq h = matrix_from_json(j.at("h"), f);
        SumBoxSpec spec = build_box(g, h);
        if (j.at("n").get<size_t>() != spec.n || j.at("kappa").get<size_t>() != spec.kappa) {
            throw Error(ErrorCode::kInvalidSpec, "n or kappa disagrees with g");
        }
        if (j.contains("m") && !(matrix_from_json(j.at("m"), f) == spec.m)) {
            throw Error(ErrorCode::kInvalidSpec, "stored m disagrees with the one built from (g, h)");
        }
        return spec;
    });
}

Json qcsa_params_to_json(const QcsaParams &params) {
    return Json{{"field", field_to_json(params.field)},
                {"N", params.n},
                {"L", params.l},
                {"alpha", params.alpha},
                {"u", params.beta},
                {"f", params.f}};
}

QcsaParams qcsa_params_from_json(const Json &j) {
    return guarded("qcsa params", [&] {
        Field field = field_from_json(j.at("field"));
        auto n = j.at("N").get<size_t>();
        auto l = j.at("L").get<size_t>();
        std::vector<Elem> u = j.contains("u") ? elems_from_json(j.at("u"), field) : std::vector<Elem>(n, 1);
        QcsaParams p{field, n, l, elems_from_json(j.at("alpha"), field), std::move(u), elems_from_json(j.at("f"), field)};
        validate_params(p);
        return p;
    });
}

Json qcsa_box_to_json(const QcsaBox &box) {
    return Json{{"params", qcsa_params_to_json(box.params)},
                {"spec", spec_to_json(box.spec)},
                {"pi", box.pi},
                {"m_qcsa", matrix_to_json(box.m_qcsa, false)},
                {"q_u", matrix_to_json(box.q_u, false)},
                {"q_v", matrix_to_json(box.q_v, false)},
                {"u", box.u},
                {"v", box.v}};
}

Json pir_params_to_json(const PirParams &params) {
    Json j{{"N", params.n}, {"M", params.m}, {"K", params.k}, {"X", params.x}, {"T", params.t}, {"theta", params.theta}};
    if (params.field) {
        j["field"] = field_to_json(*params.field);
    }
    return j;
}

PirParams pir_params_from_json(const Json &j) {
    return guarded("pir params", [&] {
        PirParams p;
        p.n = j.at("N").get<size_t>();
        p.m = j.at("M").get<size_t>();
        p.k = j.at("K").get<size_t>();
        p.x = j.at("X").get<size_t>();
        p.t = j.at("T").get<size_t>();
        p.theta = j.value("theta", size_t{0});
        p.field = optional_field(j);
        return p;
    });
}

Json sdbmm_params_to_json(const SdbmmParams &params) {
    Json j{{"N", params.n},           {"XA", params.xa},   {"XB", params.xb},
           {"lambda", params.lambda}, {"eta", params.eta}, {"mu", params.mu}};
    if (params.field) {
        j["field"] = field_to_json(*params.field);
    }
    return j;
}

SdbmmParams sdbmm_params_from_json(const Json &j) {
    return guarded("sdbmm params", [&] {
        SdbmmParams p;
        p.n = j.at("N").get<size_t>();
        p.xa = j.at("XA").get<size_t>();
        p.xb = j.at("XB").get<size_t>();
        p.lambda = j.value("lambda", size_t{1});
        p.eta = j.value("eta", size_t{1});
        p.mu = j.value("mu", size_t{1});
        p.field = optional_field(j);
        return p;
    });
}

Json report_to_json(const DemoReport &report, const Json &params) {
    return Json{{"scheme", report.scheme},
                {"params", params},
                {"rate_formula", report.rate_formula.to_string()},
                {"rate_measured", report.rate_measured.to_string()},
                {"recovered_ok", report.recovered_ok},
                {"rounds", report.rounds},
                {"servers_used", report.n_eff},
                {"symbols_per_instance", report.l_eff},
                {"field", field_to_json(report.field)}};
}

}  // namespace nsumbox
