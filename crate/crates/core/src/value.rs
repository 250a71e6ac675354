use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;

const NANOS_PER_SEC: i64 = 1_000_000_000;
const SECS_PER_DAY: i64 = 86_400;

/// A UTC instant with nanosecond resolution, stored as nanoseconds since the
/// Unix epoch.
///
/// `Display` renders RFC 3339 in UTC (`2024-01-01T10:00:00Z`), trimming
/// trailing zeros of the fractional second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Timestamp(i64);

impl Timestamp {
    /// Instant from nanoseconds since the epoch.
    pub const fn from_unix_nanos(nanos: i64) -> Self {
        Self(nanos)
    }

    /// Instant from whole seconds since the epoch.
    pub const fn from_unix_seconds(secs: i64) -> Self {
        Self(secs * NANOS_PER_SEC)
    }

    /// Instant from a proleptic Gregorian UTC calendar date and time.
    /// Returns `None` if a field is out of range or the result overflows.
    pub fn from_utc(year: i64, month: u32, day: u32, hour: u32, min: u32, sec: u32) -> Option<Self> {
        if !(1..=12).contains(&month) || day == 0 || day > days_in_month(year, month) {
            return None;
        }
        if hour > 23 || min > 59 || sec > 59 {
            return None;
        }
        let days = days_from_civil(year, month, day);
        let secs = days
            .checked_mul(SECS_PER_DAY)?
            .checked_add(i64::from(hour * 3600 + min * 60 + sec))?;
        secs.checked_mul(NANOS_PER_SEC).map(Self)
    }

    /// Nanoseconds since the epoch.
    pub const fn unix_nanos(self) -> i64 {
        self.0
    }

    /// Signed difference `self - earlier` in seconds.
    pub fn seconds_since(self, earlier: Timestamp) -> f64 {
        let delta = i128::from(self.0) - i128::from(earlier.0);
        delta as f64 / NANOS_PER_SEC as f64
    }
}

impl fmt::Display for Timestamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let secs = self.0.div_euclid(NANOS_PER_SEC);
        let nanos = self.0.rem_euclid(NANOS_PER_SEC);
        let days = secs.div_euclid(SECS_PER_DAY);
        let tod = secs.rem_euclid(SECS_PER_DAY);
        let (y, m, d) = civil_from_days(days);
        write!(
            f,
            "{:04}-{:02}-{:02}T{:02}:{:02}:{:02}",
            y,
            m,
            d,
            tod / 3600,
            (tod / 60) % 60,
            tod % 60
        )?;
        if nanos != 0 {
            let mut digits = 9;
            let mut frac = nanos;
            while frac % 10 == 0 {
                frac /= 10;
                digits -= 1;
            }
            write!(f, ".{:0width$}", frac, width = digits)?;
        }
        f.write_str("Z")
    }
}

fn is_leap(year: i64) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

fn days_in_month(year: i64, month: u32) -> u32 {
    match month {
        2 if is_leap(year) => 29,
        2 => 28,
        4 | 6 | 9 | 11 => 30,
        _ => 31,
    }
}

// Howard Hinnant's days_from_civil / civil_from_days.
fn days_from_civil(year: i64, month: u32, day: u32) -> i64 {
    let y = if month <= 2 { year - 1 } else { year };
    let era = y.div_euclid(400);
    let yoe = y - era * 400;
    let mp = i64::from((month + 9) % 12);
    let doy = (153 * mp + 2) / 5 + i64::from(day) - 1;
    let doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    era * 146_097 + doe - 719_468
}

fn civil_from_days(days: i64) -> (i64, u32, u32) {
    let z = days + 719_468;
    let era = z.div_euclid(146_097);
    let doe = z.rem_euclid(146_097);
    let yoe = (doe - doe / 1460 + doe / 36_524 - doe / 146_096) / 365;
    let doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    let mp = (5 * doy + 2) / 153;
    let d = (doy - (153 * mp + 2) / 5 + 1) as u32;
    let m = if mp < 10 { mp + 3 } else { mp - 9 } as u32;
    let y = yoe + era * 400;
    (if m <= 2 { y + 1 } else { y }, m, d)
}

/// Value of an event or object attribute.
///
/// Values are totally ordered: booleans, then numbers (integers and floats
/// compared numerically, an integer sorting before an equal float), then
/// timestamps, then strings. `Int(1)` and `Float(1.0)` are distinct values.
#[derive(Debug, Clone)]
pub enum AttrValue {
    /// UTF-8 text.
    String(String),
    /// Signed 64-bit integer.
    Int(i64),
    /// IEEE double.
    Float(f64),
    /// Boolean.
    Bool(bool),
    /// UTC instant.
    Timestamp(Timestamp),
}

impl AttrValue {
    /// Short type name as used by the XML interchange format.
    pub fn kind(&self) -> &'static str {
        match self {
            AttrValue::String(_) => "string",
            AttrValue::Int(_) => "int",
            AttrValue::Float(_) => "float",
            AttrValue::Bool(_) => "boolean",
            AttrValue::Timestamp(_) => "date",
        }
    }

    fn rank(&self) -> u8 {
        match self {
            AttrValue::Bool(_) => 0,
            AttrValue::Int(_) | AttrValue::Float(_) => 1,
            AttrValue::Timestamp(_) => 2,
            AttrValue::String(_) => 3,
        }
    }
}

/// Exact comparison of an integer with a float.
fn cmp_int_float(i: i64, x: f64) -> Ordering {
    if x.is_nan() {
        return if x.is_sign_negative() {
            Ordering::Greater
        } else {
            Ordering::Less
        };
    }
    // 2^63 as f64; every float at or beyond it is out of i64 range.
    const LIMIT: f64 = 9_223_372_036_854_775_808.0;
    if x >= LIMIT {
        return Ordering::Less;
    }
    if x < -LIMIT {
        return Ordering::Greater;
    }
    let whole = x as i64;
    match i.cmp(&whole) {
        Ordering::Equal => 0.0f64.total_cmp(&(x - whole as f64)),
        other => other,
    }
}

impl Ord for AttrValue {
    fn cmp(&self, other: &Self) -> Ordering {
        use AttrValue::*;
        match (self, other) {
            (Bool(a), Bool(b)) => a.cmp(b),
            (Int(a), Int(b)) => a.cmp(b),
            (Float(a), Float(b)) => a.total_cmp(b),
            (Int(a), Float(b)) => cmp_int_float(*a, *b).then(Ordering::Less),
            (Float(a), Int(b)) => cmp_int_float(*b, *a).reverse().then(Ordering::Greater),
            (Timestamp(a), Timestamp(b)) => a.cmp(b),
            (String(a), String(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl PartialOrd for AttrValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl PartialEq for AttrValue {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for AttrValue {}

impl fmt::Display for AttrValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttrValue::String(s) => f.write_str(s),
            AttrValue::Int(i) => write!(f, "{i}"),
            // Debug keeps the trailing ".0" so floats never render like ints.
            AttrValue::Float(x) => write!(f, "{x:?}"),
            AttrValue::Bool(b) => write!(f, "{b}"),
            AttrValue::Timestamp(t) => write!(f, "{t}"),
        }
    }
}

impl From<&str> for AttrValue {
    fn from(s: &str) -> Self {
        AttrValue::String(s.into())
    }
}

impl From<String> for AttrValue {
    fn from(s: String) -> Self {
        AttrValue::String(s)
    }
}

impl From<i64> for AttrValue {
    fn from(i: i64) -> Self {
        AttrValue::Int(i)
    }
}

impl From<f64> for AttrValue {
    fn from(x: f64) -> Self {
        AttrValue::Float(x)
    }
}

impl From<bool> for AttrValue {
    fn from(b: bool) -> Self {
        AttrValue::Bool(b)
    }
}

impl From<Timestamp> for AttrValue {
    fn from(t: Timestamp) -> Self {
        AttrValue::Timestamp(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn timestamp_display() {
        let t = Timestamp::from_utc(2024, 1, 1, 10, 0, 0).unwrap();
        assert_eq!(t.to_string(), "2024-01-01T10:00:00Z");
        assert_eq!(t.unix_nanos(), 1_704_103_200 * NANOS_PER_SEC);
        let t = Timestamp::from_unix_nanos(t.unix_nanos() + 500_000_000);
        assert_eq!(t.to_string(), "2024-01-01T10:00:00.5Z");
        assert_eq!(
            Timestamp::from_unix_nanos(-1).to_string(),
            "1969-12-31T23:59:59.999999999Z"
        );
        assert_eq!(
            Timestamp::from_utc(2000, 2, 29, 0, 0, 0).unwrap().to_string(),
            "2000-02-29T00:00:00Z"
        );
        assert!(Timestamp::from_utc(2023, 2, 29, 0, 0, 0).is_none());
    }

    #[test]
    fn civil_round_trip() {
        for days in -200_000..200_000i64 {
            let (y, m, d) = civil_from_days(days);
            assert_eq!(days_from_civil(y, m, d), days);
        }
    }

    #[test]
    fn seconds_since() {
        let a = Timestamp::from_unix_seconds(100);
        let b = Timestamp::from_unix_seconds(400);
        assert_eq!(b.seconds_since(a), 300.0);
        assert_eq!(a.seconds_since(b), -300.0);
    }

    #[test]
    fn value_order() {
        let vals = [
            AttrValue::Bool(false),
            AttrValue::Bool(true),
            AttrValue::Float(-1.5),
            AttrValue::Int(1),
            AttrValue::Float(1.0),
            AttrValue::Float(1.5),
            AttrValue::Int(2),
            AttrValue::Timestamp(Timestamp::from_unix_seconds(0)),
            AttrValue::from("A"),
            AttrValue::from("b"),
        ];
        for (i, a) in vals.iter().enumerate() {
            for (j, b) in vals.iter().enumerate() {
                assert_eq!(a.cmp(b), i.cmp(&j), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn int_float_exact() {
        let big = 9_007_199_254_740_993i64; // 2^53 + 1
        assert_eq!(cmp_int_float(big, 9_007_199_254_740_992.0), Ordering::Greater);
        assert_eq!(cmp_int_float(i64::MAX, 9.3e18), Ordering::Less);
        assert_eq!(cmp_int_float(-3, -2.5), Ordering::Less);
        assert_eq!(cmp_int_float(0, f64::NAN), Ordering::Less);
    }

    #[test]
    fn display_disambiguates_floats() {
        assert_eq!(AttrValue::Float(1.0).to_string(), "1.0");
        assert_eq!(AttrValue::Int(1).to_string(), "1");
    }
}
