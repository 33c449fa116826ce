#pragma once

// Affine equations of the two curves of the worked example, as printed.
// r satisfies r^2 + 1496/675 r + 10976/625 = 0.

namespace testdata {

inline const char* kC5 =
    "3660*x^5+(-900*r+1341)*x^4*y-14640*x^4+(-3550*r-12858)*x^3*y^2+(4500*r-300)*x^3*y"
    "+21960*x^3+(-1550*r-14313)*x^2*y^3+(7800*r+34128)*x^2*y^2+(-6300*r-4338)*x^2*y"
    "-14640*x^2+(1350*r-8874)*x*y^4+29280*x*y^3+(-4050*r-28278)*x*y^2+(2700*r+4212)*x*y"
    "+3660*x-915*y^5+3660*y^4-5490*y^3+3660*y^2-915*y";

inline const char* kC6 =
    "35882945*x^6+(-161700*r+36034208)*x^5*y-143531780*x^5+(-12929700*r-26583872)*x^4"
    "*y^2+(13414800*r-81518752)*x^4*y+215297670*x^4+(4648050*r-9108022)*x^3*y^3"
    "+(16563300*r+71383788)*x^3*y^2+(-21696450*r+45826858)*x^3*y-143531780*x^3"
    "+(12738300*r-1064672)*x^2*y^4+(-34772700*r+20345388)*x^2*y^3+(18400800*r-64080632)"
    "*x^2*y^2+(3795300*r+8765708)*x^2*y+35882945*x^2+(666300*r+36857408)*x*y^5"
    "+(-14737200*r-109507552)*x*y^4+(32123550*r+99334858)*x*y^3+(-22700700*r-17576692)"
    "*x*y^2+(4648050*r-9108022)*x*y+(166050*r+477113)*y^6+(-664200*r-1908452)*y^5"
    "+(996300*r+2862678)*y^4+(-664200*r-1908452)*y^3+(166050*r+477113)*y^2";

}  // namespace testdata
