//! JSON forms of shapes and full-precision float output.

use std::io;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::ser::{Formatter, PrettyFormatter};

use super::edge::{sweep_between, Arc, Edge, Segment};
use super::point::Point;

#[derive(Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
enum EdgeRepr {
    Segment { from: Point, to: Point },
    Arc { center: Point, radius: f64, from_angle: f64, to_angle: f64, ccw: bool },
}

impl Serialize for Edge {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let r = match *self {
            Edge::Segment(Segment { from, to }) => EdgeRepr::Segment { from, to },
            Edge::Arc(a) => EdgeRepr::Arc {
                center: a.center,
                radius: a.radius,
                from_angle: a.start,
                to_angle: a.end_angle(),
                ccw: a.ccw(),
            },
        };
        r.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Edge {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match EdgeRepr::deserialize(d)? {
            EdgeRepr::Segment { from, to } => Edge::segment(from, to),
            EdgeRepr::Arc { center, radius, from_angle, to_angle, ccw } => {
                Edge::Arc(Arc::new(center, radius, from_angle, sweep_between(from_angle, to_angle, ccw)))
            }
        })
    }
}

/// Format `x` with 17 significant digits, trailing zeros trimmed.
pub fn format_f64(x: f64) -> String {
    if !x.is_finite() {
        return "null".to_string();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0.0".into() } else { "0.0".into() };
    }
    let sci = format!("{:.16e}", x);
    let (mant, exp) = sci.split_once('e').unwrap();
    let exp: i32 = exp.parse().unwrap();
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let sign = if neg { "-" } else { "" };
    if (-5..17).contains(&exp) {
        let s = if exp >= 0 {
            let e = exp as usize + 1;
            format!("{}.{}", &digits[..e], &digits[e..])
        } else {
            format!("0.{}{}", "0".repeat((-exp - 1) as usize), digits)
        };
        let s = s.trim_end_matches('0');
        let s = if s.ends_with('.') { format!("{s}0") } else { s.to_string() };
        format!("{sign}{s}")
    } else {
        let m = format!("{}.{}", &digits[..1], &digits[1..]);
        let m = m.trim_end_matches('0');
        let m = if m.ends_with('.') { format!("{m}0") } else { m.to_string() };
        format!("{sign}{m}e{exp}")
    }
}

/// Pretty JSON formatter writing floats through [`format_f64`].
pub struct FullPrecision<'a>(PrettyFormatter<'a>);

impl Default for FullPrecision<'_> {
    fn default() -> Self {
        FullPrecision(PrettyFormatter::with_indent(b"  "))
    }
}

macro_rules! delegate {
    ($($name:ident($($arg:ident : $ty:ty),*);)*) => {
        $(fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
            self.0.$name(w $(, $arg)*)
        })*
    };
}

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        w.write_all(format_f64(v).as_bytes())
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        self.write_f64(w, v as f64)
    }

    delegate! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        begin_object_value();
        end_object_value();
    }
}

/// Serialize with two-space indentation and 17 significant digits.
pub fn to_json_string<T: Serialize + ?Sized>(v: &T) -> serde_json::Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision::default());
    v.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits utf-8"))
}
