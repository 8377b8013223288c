#include "rkbench/tableaus.hpp"

// Frozen method coefficients. Rational entries are written as exact rational
// expressions; derived irrational entries carry 17 significant digits, which
// keeps every order-condition residual at or below 1e-13 in double precision.
namespace rkbench::detail {

MethodTableau make_erk4() {
  MethodTableau t;
  t.name = "ERK4";
  t.family = Family::ERK;
  t.s = 5; t.p = 4; t.p_hat = 3;
  t.a.setZero(5, 5);
  t.a(1, 0) = 1.0 / 2.0;
  t.a(2, 1) = 1.0 / 2.0;
  t.a(3, 2) = 1.0;
  t.a(4, 0) = 5.0 / 32.0;
  t.a(4, 1) = 7.0 / 32.0;
  t.a(4, 2) = 13.0 / 32.0;
  t.a(4, 3) = -1.0 / 32.0;
  t.b.resize(5);
  t.b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 0.0;
  t.b_hat.resize(5);
  t.b_hat << -1.0 / 2.0, 7.0 / 3.0, 7.0 / 3.0, 13.0 / 6.0, -16.0 / 3.0;
  t.c.resize(5);
  t.c << 0.0, 0.5, 0.5, 1.0, 0.75;
  return t;
}

MethodTableau make_dopri5() {
  MethodTableau t;
  t.name = "DOPRI5";
  t.family = Family::ERK;
  t.s = 7; t.p = 5; t.p_hat = 4;
  t.a.setZero(7, 7);
  t.a(1, 0) = 1.0 / 5.0;
  t.a(2, 0) = 3.0 / 40.0;
  t.a(2, 1) = 9.0 / 40.0;
  t.a(3, 0) = 44.0 / 45.0;
  t.a(3, 1) = -56.0 / 15.0;
  t.a(3, 2) = 32.0 / 9.0;
  t.a(4, 0) = 19372.0 / 6561.0;
  t.a(4, 1) = -25360.0 / 2187.0;
  t.a(4, 2) = 64448.0 / 6561.0;
  t.a(4, 3) = -212.0 / 729.0;
  t.a(5, 0) = 9017.0 / 3168.0;
  t.a(5, 1) = -355.0 / 33.0;
  t.a(5, 2) = 46732.0 / 5247.0;
  t.a(5, 3) = 49.0 / 176.0;
  t.a(5, 4) = -5103.0 / 18656.0;
  t.a(6, 0) = 35.0 / 384.0;
  t.a(6, 2) = 500.0 / 1113.0;
  t.a(6, 3) = 125.0 / 192.0;
  t.a(6, 4) = -2187.0 / 6784.0;
  t.a(6, 5) = 11.0 / 84.0;
  t.b.resize(7);
  t.b << 35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0;
  t.b_hat.resize(7);
  t.b_hat << 5179.0 / 57600.0, 0.0, 7571.0 / 16695.0, 393.0 / 640.0, -92097.0 / 339200.0, 187.0 / 2100.0, 1.0 / 40.0;
  t.c.resize(7);
  t.c << 0.0, 0.2, 0.3, 0.8, 0.8888888888888888, 1.0, 1.0;
  return t;
}

MethodTableau make_dopri853() {
  MethodTableau t;
  t.name = "DOPRI853";
  t.family = Family::ERK;
  t.s = 12; t.p = 8; t.p_hat = 5;
  t.a.setZero(12, 12);
  t.a(1, 0) = 0.05260015195876773;
  t.a(2, 0) = 0.0197250569845379;
  t.a(2, 1) = 0.0591751709536137;
  t.a(3, 0) = 0.02958758547680685;
  t.a(3, 2) = 0.08876275643042054;
  t.a(4, 0) = 0.2413651341592667;
  t.a(4, 2) = -0.8845494793282861;
  t.a(4, 3) = 0.924834003261792;
  t.a(5, 0) = 0.037037037037037035;
  t.a(5, 3) = 0.17082860872947386;
  t.a(5, 4) = 0.12546768756682242;
  t.a(6, 0) = 0.037109375;
  t.a(6, 3) = 0.17025221101954405;
  t.a(6, 4) = 0.06021653898045596;
  t.a(6, 5) = -0.017578125;
  t.a(7, 0) = 0.037092000118504796;
  t.a(7, 3) = 0.17038392571223998;
  t.a(7, 4) = 0.10726203044637328;
  t.a(7, 5) = -0.015319437748624402;
  t.a(7, 6) = 0.008273789163814023;
  t.a(8, 0) = 0.6241109587160757;
  t.a(8, 3) = -3.3608926294469414;
  t.a(8, 4) = -0.868219346841726;
  t.a(8, 5) = 27.59209969944671;
  t.a(8, 6) = 20.154067550477894;
  t.a(8, 7) = -43.48988418106996;
  t.a(9, 0) = 0.4776625364382644;
  t.a(9, 3) = -2.4881146199716677;
  t.a(9, 4) = -0.590290826836843;
  t.a(9, 5) = 21.230051448181193;
  t.a(9, 6) = 15.279233632882423;
  t.a(9, 7) = -33.28821096898486;
  t.a(9, 8) = -0.020331201708508627;
  t.a(10, 0) = -0.9371424300859873;
  t.a(10, 3) = 5.186372428844064;
  t.a(10, 4) = 1.0914373489967295;
  t.a(10, 5) = -8.149787010746927;
  t.a(10, 6) = -18.52006565999696;
  t.a(10, 7) = 22.739487099350505;
  t.a(10, 8) = 2.4936055526796523;
  t.a(10, 9) = -3.0467644718982196;
  t.a(11, 0) = 2.273310147516538;
  t.a(11, 3) = -10.53449546673725;
  t.a(11, 4) = -2.0008720582248625;
  t.a(11, 5) = -17.9589318631188;
  t.a(11, 6) = 27.94888452941996;
  t.a(11, 7) = -2.8589982771350235;
  t.a(11, 8) = -8.87285693353063;
  t.a(11, 9) = 12.360567175794303;
  t.a(11, 10) = 0.6433927460157636;
  t.b.resize(12);
  t.b << 0.054293734116568765, 0.0, 0.0, 0.0, 0.0, 4.450312892752409, 1.8915178993145003, -5.801203960010585, 0.3111643669578199, -0.1521609496625161, 0.20136540080403034, 0.044710615727772594;
  t.b_hat.resize(12);
  t.b_hat << 0.04117368912237388, 0.0, 0.0, 0.0, 0.0, 5.675469339128614, 2.3872768489717506, -7.465581142465571, 0.6614932157077936, -0.48634006837553356, 0.11944219431891465, 0.06706592359165889;
  t.c.resize(12);
  t.c << 0.0, 0.05260015195876773, 0.0789002279381516, 0.1183503419072274, 0.2816496580927726, 0.3333333333333333, 0.25, 0.3076923076923077, 0.6512820512820513, 0.6, 0.8571428571428571, 1.0;
  return t;
}

MethodTableau make_sdirk4() {
  MethodTableau t;
  t.name = "SDIRK4";
  t.family = Family::SDIRK;
  t.s = 5; t.p = 4; t.p_hat = 3;
  t.gamma = 0.25;
  t.a.setZero(5, 5);
  t.a(0, 0) = 1.0 / 4.0;
  t.a(1, 0) = 1.0 / 2.0;
  t.a(1, 1) = 1.0 / 4.0;
  t.a(2, 0) = 17.0 / 50.0;
  t.a(2, 1) = -1.0 / 25.0;
  t.a(2, 2) = 1.0 / 4.0;
  t.a(3, 0) = 371.0 / 1360.0;
  t.a(3, 1) = -137.0 / 2720.0;
  t.a(3, 2) = 15.0 / 544.0;
  t.a(3, 3) = 1.0 / 4.0;
  t.a(4, 0) = 25.0 / 24.0;
  t.a(4, 1) = -49.0 / 48.0;
  t.a(4, 2) = 125.0 / 16.0;
  t.a(4, 3) = -85.0 / 12.0;
  t.a(4, 4) = 1.0 / 4.0;
  t.b.resize(5);
  t.b << 25.0 / 24.0, -49.0 / 48.0, 125.0 / 16.0, -85.0 / 12.0, 1.0 / 4.0;
  t.b_hat.resize(5);
  t.b_hat << 59.0 / 48.0, -17.0 / 96.0, 225.0 / 32.0, -85.0 / 12.0, 0.0;
  t.c.resize(5);
  t.c << 0.25, 0.75, 0.55, 0.5, 1.0;
  return t;
}

MethodTableau make_ros4() {
  MethodTableau t;
  t.name = "ROS4";
  t.family = Family::ROS;
  t.s = 4; t.p = 4; t.p_hat = 2;
  t.gamma = 0.5728160624821349;
  t.a.setZero(4, 4);
  t.a(1, 0) = 1.1456321249642698;
  t.a(2, 0) = 1.7453041913217644;
  t.a(2, 1) = -1.1153041913217643;
  t.a(3, 0) = 1.7453041913217644;
  t.a(3, 1) = -1.1153041913217643;
  t.Gamma.setZero(4, 4);
  t.Gamma(0, 0) = 0.5728160624821349;
  t.Gamma(1, 0) = -1.0;
  t.Gamma(1, 1) = 0.5728160624821349;
  t.Gamma(2, 0) = 0.25;
  t.Gamma(2, 1) = -0.5642041465399991;
  t.Gamma(2, 2) = 0.5728160624821349;
  t.Gamma(3, 0) = -4.212147837803732;
  t.Gamma(3, 1) = 3.7310686999632474;
  t.Gamma(3, 2) = -0.9728036135834497;
  t.Gamma(3, 3) = 0.5728160624821349;
  t.b.resize(4);
  t.b << 0.29650361343017007, 0.05910573982427471, 0.39439064674555524, 0.25;
  t.b_hat.resize(4);
  t.b_hat << 0.9799324540722126, -0.6570402837586985, 0.509553807075902, 0.1675540226105839;
  t.c.resize(4);
  t.c << 0.0, 1.1456321249642698, 0.63, 0.63;
  return t;
}

MethodTableau make_row3() {
  MethodTableau t;
  t.name = "ROW3";
  t.family = Family::ROW;
  t.s = 4; t.p = 3; t.p_hat = 2;
  t.gamma = 0.435866521508459;
  t.a.setZero(4, 4);
  t.a(1, 0) = 0.871733043016918;
  t.a(2, 0) = 1.0 / 2.0;
  t.a(2, 1) = -1.0 / 4.0;
  t.a(3, 0) = 1.0 / 10.0;
  t.a(3, 1) = 1.0 / 5.0;
  t.a(3, 2) = 3.0 / 20.0;
  t.Gamma.setZero(4, 4);
  t.Gamma(0, 0) = 0.435866521508459;
  t.Gamma(1, 0) = -0.871733043016918;
  t.Gamma(1, 1) = 0.435866521508459;
  t.Gamma(2, 0) = -0.4109659666303483;
  t.Gamma(2, 1) = -0.36523587533461416;
  t.Gamma(2, 2) = 0.435866521508459;
  t.Gamma(3, 0) = -0.05774736145011809;
  t.Gamma(3, 1) = -0.48336074900238013;
  t.Gamma(3, 2) = 0.08178903830026532;
  t.Gamma(3, 3) = 0.435866521508459;
  t.b.resize(4);
  t.b << 0.2073325981432825, 0.2765329197746596, -0.1333829970677834, 0.6495174791498413;
  t.b_hat.resize(4);
  t.b_hat << 0.047395263246940704, 0.10302466644023364, -0.13939481188740313, 0.9889748822002288;
  t.c.resize(4);
  t.c << 0.0, 0.871733043016918, 0.25, 0.45;
  return t;
}

MethodTableau make_rok4() {
  MethodTableau t;
  t.name = "ROK4";
  t.family = Family::ROK;
  t.s = 5; t.p = 4; t.p_hat = 3;
  t.gamma = 0.5728160624821349;
  t.min_basis = 4;
  t.a.setZero(5, 5);
  t.a(1, 0) = 1.0 / 2.0;
  t.a(2, 1) = 1.0 / 2.0;
  t.a(3, 2) = 1.0;
  t.a(4, 0) = 5.0 / 32.0;
  t.a(4, 1) = 7.0 / 32.0;
  t.a(4, 2) = 13.0 / 32.0;
  t.a(4, 3) = -1.0 / 32.0;
  t.Gamma.setZero(5, 5);
  t.Gamma(0, 0) = 0.5728160624821349;
  t.Gamma(1, 0) = -0.026271003567123714;
  t.Gamma(1, 1) = 0.5728160624821349;
  t.Gamma(2, 0) = 0.47104651218041654;
  t.Gamma(2, 1) = -1.6035431353611245;
  t.Gamma(2, 2) = 0.5728160624821349;
  t.Gamma(3, 0) = 0.256081107737684;
  t.Gamma(3, 1) = 0.30726814643287614;
  t.Gamma(3, 2) = -1.6827103755677062;
  t.Gamma(3, 3) = 0.5728160624821349;
  t.Gamma(4, 1) = -0.4594389241383689;
  t.Gamma(4, 2) = -0.663732541913566;
  t.Gamma(4, 3) = 0.26887318549756833;
  t.Gamma(4, 4) = 0.5728160624821349;
  t.b.resize(5);
  t.b << 1.0 / 6.0, 1.0 / 3.0, 1.0 / 3.0, 1.0 / 6.0, 0.0;
  t.b_hat.resize(5);
  t.b_hat << -1.0 / 2.0, 7.0 / 3.0, 7.0 / 3.0, 13.0 / 6.0, -16.0 / 3.0;
  t.c.resize(5);
  t.c << 0.0, 0.5, 0.5, 1.0, 0.75;
  return t;
}

}  // namespace rkbench::detail
