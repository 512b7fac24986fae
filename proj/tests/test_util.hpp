// shared fixtures and reference tables for the test suites
#pragma once

#include "core/device.hpp"

#include <Eigen/Dense>

#include <string>

namespace bhctest {

inline std::string data_path(const std::string& name) {
    return std::string(BHC_DATA_DIR) + "/" + name;
}

inline bhc::DeviceParams working_point() {
    return bhc::load_config(data_path("device_workingpoint.json"));
}

inline bhc::DeviceParams zero_flux() {
    return bhc::load_config(data_path("device_zeroflux.json"));
}

// dressed targets of the working point: cavity-like + E1..E3 (GHz)
inline const double kTargetCavity = 7.116;
inline const double kTargetE[3] = {4.61164, 4.85539, 5.0196};

// reference dressed-basis matrices at the working point, rows/cols ordered
// cavity, then qubit modes by *descending* energy (presentation order)
inline Eigen::Matrix4d printed_N() {
    Eigen::Matrix4d n;
    n << -0.986, -0.073, -0.126, -0.077,
         -0.163,  0.426,  0.690,  0.561,
          0.014, -0.680, -0.158,  0.716,
         -0.013, -0.592,  0.695, -0.408;
    return n;
}

inline Eigen::Matrix4d printed_M() {
    Eigen::Matrix4d m;
    m << -0.986, -0.164,  0.014, -0.013,
         -0.073,  0.426, -0.680, -0.592,
         -0.126,  0.690, -0.158,  0.694,
         -0.077,  0.561,  0.716, -0.410;
    return m;
}

// cross-Kerr matrix in presentation order, cyclic MHz
inline Eigen::Matrix3d printed_eta_mhz() {
    Eigen::Matrix3d e;
    e << -2.422, 0.227, -1.241,
          0.227, -1.279, 0.338,
         -1.241, 0.338, -2.445;
    return e;
}

} // namespace bhctest
