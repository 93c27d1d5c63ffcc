// Generated by generate.py; do not edit.
#![allow(dead_code, clippy::excessive_precision)]

/// J_3(2.5), ascending series.
pub const J3_AT_2_5: f64 = 0.2166003910391135247666893;

/// I_2(10), ascending series.
pub const I2_AT_10: f64 = 2281.518967726003540601588;

/// K_0(1) = int_0^inf exp(-cosh t) dt.
pub const K0_AT_1: f64 = 0.4210244382407083333356305;

/// K_5(0.01).
pub const K5_AT_0_01: f64 = 3839976000099.999583335943;

/// (m-1)!/2 (2/x)^m at m = 5, x = 0.01.
pub const K5_AT_0_01_LEADING: f64 = 3840000000000.0;

/// K_3'(2), central difference of K_3 at step 1e-8.
pub const K3_PRIME_AT_2: f64 = -1.224837840989007211038843;

/// int_0^inf k^2 I_0(k)/K_0(k) K_0(2k)^2 dk.
pub const WIRE_M0_Z_INTEGRAL_R1_RHO2: f64 = 0.06739545089704198282016382;

/// sum'_m int_0^inf k^2 I_m(k)/K_m(k) K_m(1.5k)^2 dk.
pub const WIRE_Z_PRIMED_SUM_R1_RHO1_5: f64 = 0.6801114234124274882690656;

/// Xi_z for R = 1, rho = 2.
pub const WIRE_XI_Z_R1_RHO2: f64 = 0.04929641356088365720583699;

/// A(x = 1, r = 0.5).
pub const A_KERNEL_1_HALF: f64 = 0.1796251816042023909167632;

/// Halfplane G_H at (1, pi/2, 0), (1, pi/2, 1).
pub const GH_HALFPLANE_REF: f64 = -0.0295383947196548003492498;

/// Wire G_H at (2, 0, 0), (3, 0, 0.5), R = 1.
pub const GH_WIRE_REF: f64 = -0.02187229185614462832338203;

/// Halfplane Xi_rho at rho = 1, phi = pi/2.
pub const XI_HALFPLANE_RHO_HALF_PI: f64 = 0.09565727981081152828518349;

/// Halfplane Xi_phi at rho = 1, phi = pi/2.
pub const XI_HALFPLANE_PHI_HALF_PI: f64 = 0.02461854403783769434296255;

/// Halfplane Xi_z at rho = 1, phi = pi/2.
pub const XI_HALFPLANE_Z_HALF_PI: f64 = 0.04451291192432461131407323;

/// Halfplane Xi_rho at rho = 1, phi = pi - 1e-6.
pub const XI_HALFPLANE_RHO_NEAR_PI: f64 = 0.06631455962163035117192661;

/// Halfplane Xi_phi at rho = 1, phi = pi - 1e-6.
pub const XI_HALFPLANE_PHI_NEAR_PI: f64 = 4.64201917351483762144261e-15;

/// Halfplane Xi_z at rho = 1, phi = pi - 1e-6.
pub const XI_HALFPLANE_Z_NEAR_PI: f64 = 0.02652582384865320150172459;

/// sum_n J_(n+1/2)(k rho) J_(n+1/2)(k rho') cos((n+1/2) alpha), k = 1, rho = rho' = 1, alpha = 0.
pub const HALFINT_LHS_K1_EQUAL_ALPHA0: f64 = 0.5110188219240463708452545;

/// Integral side of the half-integer sum, k = 1, rho = rho' = 1, alpha = 0.
pub const HALFINT_RHS_K1_EQUAL_ALPHA0: f64 = 0.5110188219240463708452545;

/// sum_n J_(n+1/2)(k rho) J_(n+1/2)(k rho') cos((n+1/2) alpha), k = 2, rho = 1, rho' = 0.5, alpha = pi/3.
pub const HALFINT_LHS_K2_PI_THIRD: f64 = 0.2882666321887983052504747;

/// Integral side of the half-integer sum, k = 2, rho = 1, rho' = 0.5, alpha = pi/3.
pub const HALFINT_RHS_K2_PI_THIRD: f64 = 0.2882666321887983052504747;
