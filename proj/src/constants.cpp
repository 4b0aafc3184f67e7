#include "erlmag/constants.hpp"

#include <json.hpp>

#include "erlmag/errors.hpp"

namespace erlmag {

std::string ConstantsTable::to_json() const {
    nlohmann::ordered_json j;
    j["hbar_J_s"] = hbar_;
    j["mu0_T_m_per_A"] = mu0_;
    j["c_m_per_s"] = c_;
    j["k_B_J_per_K"] = k_B_;
    j["mu_B_J_per_T"] = mu_B_;
    j["Phi0_Wb"] = Phi0_;
    return j.dump(2);
}

ConstantsTable ConstantsTable::from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        return ConstantsTable(j.at("hbar_J_s").get<double>(),
                              j.at("mu0_T_m_per_A").get<double>(),
                              j.at("c_m_per_s").get<double>(),
                              j.at("k_B_J_per_K").get<double>(),
                              j.at("mu_B_J_per_T").get<double>(),
                              j.at("Phi0_Wb").get<double>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("constants table: ") + e.what());
    }
}

}  // namespace erlmag
