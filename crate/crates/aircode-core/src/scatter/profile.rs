//! Sampled radial scattering profiles.
//!
//! Reflection and transmission profiles of laterally infinite layers are
//! radially symmetric, so a 1-D sampling f(r) on an ascending radius grid
//! carries the full 2-D function. Values are energy densities per unit area
//! (1/mm^2): the profile's total energy is the rotational integral
//! 2*pi * int f(r) r dr.

use serde::{Deserialize, Serialize};

use super::ScatterError;

/// A sampled radially symmetric profile f(r) on [0, r_max].
///
/// Radii are strictly ascending and start at zero; values are nonnegative
/// and finite. For physical reflection/transmission profiles the rotational
/// integral must not exceed 1 (energy conservation).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialProfile {
    radii: Vec<f64>,
    values: Vec<f64>,
    r_max: f64,
}

impl RadialProfile {
    /// Build a profile from matching radius/value samples.
    pub fn new(radii: Vec<f64>, values: Vec<f64>) -> Result<Self, ScatterError> {
        if radii.is_empty() || radii.len() != values.len() {
            return Err(ScatterError::EmptyProfile);
        }
        if radii[0] != 0.0 {
            return Err(ScatterError::BadGrid("radius grid must start at 0".into()));
        }
        for w in radii.windows(2) {
            if !(w[1] > w[0]) {
                return Err(ScatterError::BadGrid(format!(
                    "radius grid not strictly ascending at r = {}",
                    w[1]
                )));
            }
        }
        for (&r, &v) in radii.iter().zip(&values) {
            if !v.is_finite() || v < 0.0 {
                return Err(ScatterError::BadValue { at: r, value: v });
            }
        }
        let r_max = *radii.last().unwrap();
        Ok(Self { radii, values, r_max })
    }

    /// Sample a function on a uniform grid of `n` radii over [0, r_max].
    pub fn from_fn(n: usize, r_max: f64, f: impl Fn(f64) -> f64) -> Result<Self, ScatterError> {
        if n < 2 || !(r_max > 0.0) {
            return Err(ScatterError::BadGrid("need n >= 2 and r_max > 0".into()));
        }
        let radii: Vec<f64> = (0..n).map(|i| r_max * i as f64 / (n - 1) as f64).collect();
        let values = radii.iter().map(|&r| f(r)).collect();
        Self::new(radii, values)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn r_max(&self) -> f64 {
        self.r_max
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Linear interpolation of f(r); zero outside [0, r_max].
    pub fn sample(&self, r: f64) -> f64 {
        if r < 0.0 || r > self.r_max {
            return 0.0;
        }
        match self.radii.binary_search_by(|x| x.partial_cmp(&r).unwrap()) {
            Ok(i) => self.values[i],
            Err(i) => {
                // i >= 1 because radii[0] = 0 <= r.
                let (r0, r1) = (self.radii[i - 1], self.radii[i]);
                let t = (r - r0) / (r1 - r0);
                self.values[i - 1] * (1.0 - t) + self.values[i] * t
            }
        }
    }

    /// Rotational integral 2*pi * int_0^{r_max} f(r) r dr (trapezoidal).
    pub fn total_energy(&self) -> f64 {
        let mut acc = 0.0;
        for i in 1..self.radii.len() {
            let dr = self.radii[i] - self.radii[i - 1];
            let g0 = self.values[i - 1] * self.radii[i - 1];
            let g1 = self.values[i] * self.radii[i];
            acc += 0.5 * (g0 + g1) * dr;
        }
        2.0 * std::f64::consts::PI * acc
    }

    /// Check the energy-conservation invariant for physical profiles.
    pub fn check_energy(&self) -> Result<(), ScatterError> {
        let e = self.total_energy();
        if e > 1.0 + 1e-6 {
            return Err(ScatterError::EnergyViolation(e));
        }
        Ok(())
    }

    /// Smallest radius at which the cumulative rotational integral reaches
    /// `fraction` of the total. Used to size integration windows.
    pub fn energy_radius(&self, fraction: f64) -> f64 {
        let total = self.total_energy();
        if total <= 0.0 {
            return 0.0;
        }
        let target = fraction.clamp(0.0, 1.0) * total;
        let mut acc = 0.0;
        for i in 1..self.radii.len() {
            let dr = self.radii[i] - self.radii[i - 1];
            let g0 = self.values[i - 1] * self.radii[i - 1];
            let g1 = self.values[i] * self.radii[i];
            acc += std::f64::consts::PI * (g0 + g1) * dr;
            if acc >= target {
                return self.radii[i];
            }
        }
        self.r_max
    }

    /// Pointwise map, preserving the grid. The mapped values must stay valid.
    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Result<Self, ScatterError> {
        let values = self
            .radii
            .iter()
            .zip(&self.values)
            .map(|(&r, &v)| f(r, v))
            .collect();
        Self::new(self.radii.clone(), values)
    }
}

/// One measured material slab: thickness plus its two profiles.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MaterialSample {
    pub name: String,
    pub thickness_mm: f64,
    pub reflection: RadialProfile,
    pub transmission: RadialProfile,
}

impl MaterialSample {
    pub fn new(
        name: impl Into<String>,
        thickness_mm: f64,
        reflection: RadialProfile,
        transmission: RadialProfile,
    ) -> Result<Self, ScatterError> {
        if !(thickness_mm > 0.0) {
            return Err(ScatterError::BadGrid("sample thickness must be > 0".into()));
        }
        reflection.check_energy()?;
        transmission.check_energy()?;
        Ok(Self {
            name: name.into(),
            thickness_mm,
            reflection,
            transmission,
        })
    }
}

/// Parse a `r_mm,R,T` CSV into reflection/transmission profiles.
///
/// The header row is required. Errors carry 1-based data row numbers.
pub fn profiles_from_csv(data: &str) -> Result<(RadialProfile, RadialProfile), ScatterError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(data.as_bytes());
    {
        let headers = reader.headers().map_err(|e| ScatterError::Csv {
            row: 0,
            message: e.to_string(),
        })?;
        let expect = ["r_mm", "R", "T"];
        let got: Vec<&str> = headers.iter().collect();
        if got != expect {
            return Err(ScatterError::Csv {
                row: 0,
                message: format!("expected header r_mm,R,T (got {:?})", got.join(",")),
            });
        }
    }
    let mut radii = Vec::new();
    let mut refl = Vec::new();
    let mut trans = Vec::new();
    for (idx, record) in reader.records().enumerate() {
        let row = idx + 1;
        let record = record.map_err(|e| ScatterError::Csv {
            row,
            message: e.to_string(),
        })?;
        if record.len() != 3 {
            return Err(ScatterError::Csv {
                row,
                message: format!("expected 3 fields, got {}", record.len()),
            });
        }
        let mut fields = [0.0_f64; 3];
        for (k, raw) in record.iter().enumerate() {
            fields[k] = raw.parse().map_err(|_| ScatterError::Csv {
                row,
                message: format!("not a number: {raw:?}"),
            })?;
        }
        if let Some(&prev) = radii.last() {
            if fields[0] <= prev {
                return Err(ScatterError::Csv {
                    row,
                    message: format!("radius {} not strictly ascending (previous {})", fields[0], prev),
                });
            }
        }
        radii.push(fields[0]);
        refl.push(fields[1]);
        trans.push(fields[2]);
    }
    if radii.is_empty() {
        return Err(ScatterError::Csv {
            row: 0,
            message: "no data rows".into(),
        });
    }
    let r = RadialProfile::new(radii.clone(), refl)?;
    let t = RadialProfile::new(radii, trans)?;
    Ok((r, t))
}

/// Serialize profiles back to the `r_mm,R,T` CSV schema.
pub fn profiles_to_csv(refl: &RadialProfile, trans: &RadialProfile) -> String {
    let mut out = String::from("r_mm,R,T\n");
    for i in 0..refl.len() {
        out.push_str(&format!(
            "{:.6},{:.9e},{:.9e}\n",
            refl.radii()[i],
            refl.values()[i],
            trans.values()[i]
        ));
    }
    out
}
