use super::catenoid::invert_area_map;

/// Solves `x = v/2 + sinh(2v)/4` for `v`.
fn profile_parameter(x: f64) -> f64 {
    invert_area_map(x, 1.0)
}

/// Real helicoid profile `w(x) = sinh v(x)`.
pub fn helicoid_profile(x: f64) -> f64 {
    profile_parameter(x).sinh()
}

/// Analytic second derivative `w''(x) = -w sech^4 v`.
pub fn helicoid_second_derivative(x: f64) -> f64 {
    let v = profile_parameter(x);
    let s = 1.0 / v.cosh();
    -v.sinh() * s.powi(4)
}

/// `w(x)(2w(x)^2 - w(x-hbar)^2 - w(x+hbar)^2) - 2 hbar^2 w''(x)`.
pub fn helicoid_residual(x: f64, hbar: f64) -> f64 {
    let w = helicoid_profile(x);
    let wm = helicoid_profile(x - hbar);
    let wp = helicoid_profile(x + hbar);
    w * (2.0 * w * w - wm * wm - wp * wp) - 2.0 * hbar * hbar * helicoid_second_derivative(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn profile_values() {
        assert_eq!(helicoid_profile(0.0), 0.0);
        assert!((helicoid_profile(1.0) - 0.8925).abs() < 1e-3);
        assert!((profile_parameter(1.0) - 0.8034).abs() < 1e-3);
        assert_eq!(helicoid_profile(-1.3), -helicoid_profile(1.3));
    }

    #[test]
    fn second_derivative_matches_differences() {
        let x = 0.7;
        let h = 1e-4;
        let fd = (helicoid_profile(x + h) - 2.0 * helicoid_profile(x) + helicoid_profile(x - h)) / (h * h);
        assert!((fd - helicoid_second_derivative(x)).abs() < 1e-5);
    }

    #[test]
    fn residual_is_fourth_order() {
        assert_eq!(helicoid_residual(0.0, 0.3), 0.0);
        let a = helicoid_residual(1.0, 0.04);
        let b = helicoid_residual(1.0, 0.02);
        let ratio = a / b;
        assert!((12.0..20.0).contains(&ratio), "{ratio}");
        assert!((helicoid_residual(1.0, 1e-3) / 1e-6).abs() < 1e-4);
    }
}
