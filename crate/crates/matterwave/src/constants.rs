//! Physical constants (CODATA 2018) and atomic species masses.
//!
//! All values are SI. The species table covers the atoms used throughout
//! the examples and the command-line front end; masses are isotope masses
//! for the isotopes commonly used in cold-atom work (Rb-87, K-39, Li-7,
//! Ar-40, Cs-133, Na-23).

/// Planck constant, J s (exact).
pub const H_PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant ħ = h/2π, J s.
pub const HBAR: f64 = 1.054_571_817e-34;
/// Boltzmann constant, J/K (exact).
pub const K_B: f64 = 1.380_649e-23;
/// Atomic mass unit, kg.
pub const AMU: f64 = 1.660_539_066_60e-27;
/// Vacuum permittivity, F/m.
pub const EPSILON_0: f64 = 8.854_187_812_8e-12;
/// Electron volt, J (exact).
pub const EV: f64 = 1.602_176_634e-19;

/// Atomic species with compiled-in masses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Species {
    Na,
    Rb87,
    Cs,
    K,
    Li,
    Ar,
}

impl Species {
    /// Mass in kg.
    pub fn mass(self) -> f64 {
        self.mass_amu() * AMU
    }

    /// Isotope mass in atomic mass units.
    pub fn mass_amu(self) -> f64 {
        match self {
            Species::Na => 22.989_769_28,
            Species::Rb87 => 86.909_180_531,
            Species::Cs => 132.905_451_961,
            Species::K => 38.963_706_486,
            Species::Li => 7.016_003_436_6,
            Species::Ar => 39.962_383_123_7,
        }
    }

    /// Parse a species name as used on the command line ("Na", "Rb87", "Rb-87", ...).
    pub fn parse(name: &str) -> Option<Species> {
        match name.to_ascii_lowercase().replace('-', "").as_str() {
            "na" | "sodium" => Some(Species::Na),
            "rb" | "rb87" | "rubidium" => Some(Species::Rb87),
            "cs" | "cs133" | "caesium" | "cesium" => Some(Species::Cs),
            "k" | "k39" | "potassium" => Some(Species::K),
            "li" | "li7" | "lithium" => Some(Species::Li),
            "ar" | "ar40" | "argon" => Some(Species::Ar),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Species::Na => "Na",
            Species::Rb87 => "Rb87",
            Species::Cs => "Cs",
            Species::K => "K",
            Species::Li => "Li",
            Species::Ar => "Ar",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hbar_consistent_with_h() {
        assert!((HBAR - H_PLANCK / (2.0 * std::f64::consts::PI)).abs() / HBAR < 1e-9);
    }

    #[test]
    fn sodium_mass_matches_handbook_value() {
        // 22.98976928 u = 3.8175e-26 kg
        assert!((Species::Na.mass() - 3.8175e-26).abs() < 1e-29);
    }

    #[test]
    fn species_parsing() {
        assert_eq!(Species::parse("Rb-87"), Some(Species::Rb87));
        assert_eq!(Species::parse("na"), Some(Species::Na));
        assert_eq!(Species::parse("xx"), None);
    }
}
