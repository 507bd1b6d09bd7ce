#pragma once
// Generated by tests/oracles/reference_values.py (mpmath, 50 digits). Do not edit.

namespace ref {
inline constexpr double kG0Db_15 = 21.85594867407519078048972;
inline constexpr double kGslDb_15 = -11.69227943767311855813096;
inline constexpr double kG0Db_30 = 15.90997743720996569159915;
inline constexpr double kGslDb_30 = -11.97723224360131207483238;
inline constexpr double kG0Db_60 = 10.19050196187637173330544;
inline constexpr double kGslDb_60 = -12.26218504952950559153381;
inline constexpr double kNoisePsd = 3.981071705534972507702523e-23;
inline constexpr double kK0Friis60 = 0.0000001580953793650958463950020;
inline constexpr double kPr10m = 0.03801329326228174988769430;
inline constexpr double kPr10mFriis = 0.00002403890407686830052452967;
inline constexpr double kParallelWeight = 3.868300572099683424237276e-11;
inline constexpr double kCollinearCoupling31 = 0.000003693919730570281330328596;
inline constexpr double kCollinearCoupling13 = 0.000003574841334364705026565353;
inline constexpr double kCollinearRateNoControl1 = 8653751244.911386942910495;
inline constexpr double kCollinearNeeded1 = 1733.352343449941361258340;
inline constexpr double kCollinearPower1 = 0.9233390606580816109900785;
inline constexpr double kCollinearRatioBound1 = 0.000003749750366201702417093491;
inline constexpr double kCollinearAlpha1 = 0.00002667073519988553542020415;
inline constexpr double kThetaConditionReal = 6418.029449629123235344742;
}  // namespace ref
