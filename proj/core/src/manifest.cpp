#include "mbl/manifest.hpp"

#include "mbl/errors.hpp"
#include "mbl/version.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mbl {

using nlohmann::json;

std::string_view to_string(SchemeKind s)
{
    switch (s) {
    case SchemeKind::trapezoid: return "trapezoid";
    case SchemeKind::midpoint: return "midpoint";
    case SchemeKind::third_order: return "third_order";
    }
    return "?";
}

std::string_view to_string(IcKind k) { return k == IcKind::riemann ? "riemann" : "smooth_ramp"; }

SchemeKind parse_scheme(std::string_view s)
{
    if (s == "trapezoid")
        return SchemeKind::trapezoid;
    if (s == "midpoint")
        return SchemeKind::midpoint;
    if (s == "third_order")
        return SchemeKind::third_order;
    throw ValidationError("unknown scheme: " + std::string(s));
}

IcKind parse_ic(std::string_view s)
{
    if (s == "riemann")
        return IcKind::riemann;
    if (s == "smooth_ramp")
        return IcKind::smooth_ramp;
    throw ValidationError("unknown ic_kind: " + std::string(s));
}

int RunManifest::n_cells() const
{
    if (!(L > 0.0) || !(dx > 0.0))
        throw ValidationError("manifest: L and dx must be positive");
    const double n = L / dx;
    const double r = std::round(n);
    if (std::abs(n - r) > 1e-6 * std::max(1.0, n))
        throw ValidationError("manifest: L must be a whole number of cells of width dx");
    if (r < 8.0 || r > 5e7)
        throw ValidationError("manifest: cell count out of range");
    return int(r);
}

GridSpec RunManifest::grid() const { return GridSpec::make(L, n_cells(), lambda); }

void RunManifest::validate() const
{
    const FluxModel model(M);
    params().validate();
    if (!(u_B > 0.0 && u_B < 1.0))
        throw ValidationError("manifest: u_B must lie in (0,1)");
    if (L0 < 0.0 || L0 >= L)
        throw ValidationError("manifest: need 0 <= L0 < L");
    if (!(lambda > 0.0))
        throw ValidationError("manifest: lambda must be positive");
    if (0.5 - lambda * model.max_deriv() <= 0.0)
        throw ValidationError("manifest: lambda violates the CFL bound lambda*max|f'| < 1/2");
    if (!(t_final > 0.0))
        throw ValidationError("manifest: t_final must be positive");
    double prev = 0.0;
    for (double t : snapshot_times) {
        if (t < prev || t > t_final)
            throw ValidationError("manifest: snapshot_times must be sorted within [0, t_final]");
        prev = t;
    }
    grid();
}

std::vector<std::string> RunManifest::warnings() const
{
    std::vector<std::string> w;
    if (ic_kind != IcKind::riemann)
        return w;
    const FluxModel model(M);
    // fastest possible leading wave: max over u of f(u)/u
    double speed = model.D();
    for (double u = 0.01; u < 1.0; u += 0.01)
        speed = std::max(speed, flux(u, model) / u);
    const double need = L0 + speed * t_final;
    if (!(L > need)) {
        std::ostringstream os;
        os << "domain sizing: L = " << L << " <= " << need << " (leading speed " << speed << " x t_final + L0)";
        w.push_back(os.str());
    }
    return w;
}

RunManifest manifest_from_json(std::string_view text)
{
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
    if (!j.is_object())
        throw ValidationError("manifest: top level must be an object");

    static const std::set<std::string> known = {"scheme", "M",       "epsilon", "tau",    "u_B",
                                                "L",      "L0",      "dx",      "lambda", "t_final",
                                                "snapshot_times",    "ic_kind", "output_dir",
                                                "code_version"};
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!known.count(it.key()))
            throw ValidationError("manifest: unknown key '" + it.key() + "'");

    RunManifest m;
    try {
        if (j.contains("scheme"))
            m.scheme = parse_scheme(j.at("scheme").get<std::string>());
        if (j.contains("M"))
            m.M = j.at("M").get<double>();
        if (j.contains("epsilon"))
            m.epsilon = j.at("epsilon").get<double>();
        if (j.contains("tau"))
            m.tau = j.at("tau").get<double>();
        if (j.contains("u_B")) {
            const auto& v = j.at("u_B");
            if (v.is_string()) {
                if (v.get<std::string>() != "alpha")
                    throw ValidationError("manifest: u_B must be a number or \"alpha\"");
                m.u_B = FluxModel(m.M).alpha();
            } else {
                m.u_B = v.get<double>();
            }
        } else {
            m.u_B = FluxModel(m.M).alpha();
        }
        if (j.contains("L"))
            m.L = j.at("L").get<double>();
        if (j.contains("L0"))
            m.L0 = j.at("L0").get<double>();
        if (j.contains("dx"))
            m.dx = j.at("dx").get<double>();
        if (j.contains("lambda"))
            m.lambda = j.at("lambda").get<double>();
        if (j.contains("t_final"))
            m.t_final = j.at("t_final").get<double>();
        if (j.contains("snapshot_times"))
            m.snapshot_times = j.at("snapshot_times").get<std::vector<double>>();
        if (j.contains("ic_kind"))
            m.ic_kind = parse_ic(j.at("ic_kind").get<std::string>());
        if (j.contains("output_dir"))
            m.output_dir = j.at("output_dir").get<std::string>();
    } catch (const json::exception& e) {
        throw ValidationError(std::string("manifest: ") + e.what());
    }
    m.validate();
    return m;
}

RunManifest load_manifest(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw IoError("cannot read manifest " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return manifest_from_json(ss.str());
}

std::string manifest_to_json(const RunManifest& m)
{
    json j = json::object();
    j["code_version"] = kVersion;
    j["scheme"] = std::string(to_string(m.scheme));
    j["M"] = m.M;
    j["epsilon"] = m.epsilon;
    j["tau"] = m.tau;
    j["u_B"] = m.u_B;
    j["L"] = m.L;
    j["L0"] = m.L0;
    j["dx"] = m.dx;
    j["lambda"] = m.lambda;
    j["t_final"] = m.t_final;
    j["snapshot_times"] = m.snapshot_times;
    j["ic_kind"] = std::string(to_string(m.ic_kind));
    j["output_dir"] = m.output_dir;
    return j.dump(2);
}

} // namespace mbl
