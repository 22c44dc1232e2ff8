//! JSON wire format for game settings:
//!
//! ```json
//! {"K": 3, "media": [{"N": 100, "gamma": 2}, {"N": 25, "gamma": "1/2"}]}
//! ```
//!
//! Costs may be JSON numbers or `"p/q"` strings; strings preserve
//! exactness for fractions (a decimal number parses to the exact value of
//! its binary representation, so prefer strings for non-integer costs).
//! Validation failures name the offending field.

use crate::error::{Error, Result};
use crate::model::{GameSetting, MediumParams};
use crate::value::{parse_rational, Rational};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SettingDoc {
    #[serde(rename = "K")]
    pub seeds: u64,
    pub media: Vec<MediumDoc>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MediumDoc {
    #[serde(rename = "N")]
    pub subscribers: u64,
    pub gamma: GammaDoc,
}

/// A cost as it appears on the wire.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GammaDoc {
    Integer(i64),
    Decimal(f64),
    Text(String),
}

impl GammaDoc {
    fn to_rational(&self, field: &str) -> Result<Rational> {
        match self {
            GammaDoc::Integer(n) => Ok(Rational::from_integer(BigInt::from(*n))),
            GammaDoc::Decimal(x) => Rational::from_float(*x)
                .ok_or_else(|| Error::invalid_setting(field, "cost must be finite")),
            GammaDoc::Text(s) => parse_rational(s).ok_or_else(|| {
                Error::invalid_setting(field, format!("`{s}` is not a rational (use \"p/q\")"))
            }),
        }
    }

    fn from_rational(value: &Rational) -> GammaDoc {
        if value.denom().is_one() {
            if let Some(n) = value.numer().to_i64() {
                return GammaDoc::Integer(n);
            }
        }
        GammaDoc::Text(value.to_string())
    }
}

impl SettingDoc {
    /// Parses the JSON document; errors carry the path of the offending
    /// field.
    pub fn parse(text: &str) -> Result<SettingDoc> {
        let deserializer = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(deserializer).map_err(|e| {
            let path = e.path().to_string();
            let field = if path == "." { "json".to_string() } else { path };
            Error::invalid_setting(field, e.inner().to_string())
        })
    }

    /// Validates and builds the setting. `allow_zero_subscribers` admits
    /// `N = 0` media for boundary studies; the model proper requires
    /// `N >= 1`.
    pub fn into_setting(self, allow_zero_subscribers: bool) -> Result<GameSetting> {
        if self.media.is_empty() {
            return Err(Error::invalid_setting("media", "at least one medium is required"));
        }
        let mut media = Vec::with_capacity(self.media.len());
        for (index, doc) in self.media.iter().enumerate() {
            let gamma_field = format!("media[{index}].gamma");
            let cost = doc.gamma.to_rational(&gamma_field)?;
            if cost.is_negative() {
                return Err(Error::invalid_setting(gamma_field, "cost must be nonnegative"));
            }
            let params = if doc.subscribers == 0 {
                if !allow_zero_subscribers {
                    return Err(Error::invalid_setting(
                        format!("media[{index}].N"),
                        "subscriber count must be positive \
                         (pass --allow-zero-subscribers to study the boundary)",
                    ));
                }
                MediumParams::zero_subscribers(cost)?
            } else {
                MediumParams::new(doc.subscribers, cost)?
            };
            media.push(params);
        }
        GameSetting::new(self.seeds, media)
    }

    pub fn from_setting(setting: &GameSetting) -> SettingDoc {
        SettingDoc {
            seeds: setting.seeds(),
            media: setting
                .media()
                .iter()
                .map(|m| MediumDoc {
                    subscribers: m.subscribers(),
                    gamma: GammaDoc::from_rational(m.cost()),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("setting documents always serialize")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::value::{int, ratio};

    #[test]
    fn parses_the_reference_setting() {
        let doc = SettingDoc::parse(
            r#"{"K":3,"media":[{"N":100,"gamma":2},{"N":25,"gamma":1},{"N":20,"gamma":1}]}"#,
        )
        .unwrap();
        let setting = doc.into_setting(false).unwrap();
        assert_eq!(setting.seeds(), 3);
        assert_eq!(setting.media_count(), 3);
        assert_eq!(setting.media()[0].subscribers(), 100);
        assert_eq!(*setting.media()[0].cost(), int(2));
    }

    #[test]
    fn parses_fraction_strings_exactly() {
        let doc = SettingDoc::parse(
            r#"{"K":2,"media":[{"N":4,"gamma":"0/1"},{"N":2,"gamma":"1/3"}]}"#,
        )
        .unwrap();
        let setting = doc.into_setting(false).unwrap();
        assert_eq!(*setting.media()[0].cost(), int(0));
        assert_eq!(*setting.media()[1].cost(), ratio(1, 3));
    }

    #[test]
    fn trivial_empty_game_parses() {
        let doc = SettingDoc::parse(r#"{"K":0,"media":[{"N":1,"gamma":0}]}"#).unwrap();
        let setting = doc.into_setting(false).unwrap();
        assert_eq!(setting.seeds(), 0);
    }

    #[test]
    fn errors_name_the_field() {
        let err = SettingDoc::parse(r#"{"K":2,"media":[{"N":4,"gamma":"x"}]}"#)
            .unwrap()
            .into_setting(false)
            .unwrap_err();
        assert!(err.to_string().contains("media[0].gamma"), "{err}");

        let err = SettingDoc::parse(r#"{"K":2,"media":[{"N":0,"gamma":1}]}"#)
            .unwrap()
            .into_setting(false)
            .unwrap_err();
        assert!(err.to_string().contains("media[0].N"), "{err}");

        let err = SettingDoc::parse(r#"{"K":2,"media":[{"N":3,"gamma":-1}]}"#)
            .unwrap()
            .into_setting(false)
            .unwrap_err();
        assert!(err.to_string().contains("media[0].gamma"), "{err}");

        let err = SettingDoc::parse(r#"{"K":2,"media":[]}"#)
            .unwrap()
            .into_setting(false)
            .unwrap_err();
        assert!(err.to_string().contains("media"), "{err}");

        let err = SettingDoc::parse(r#"{"K":"many","media":[]}"#).unwrap_err();
        assert!(err.to_string().contains('K'), "{err}");
    }

    #[test]
    fn zero_subscribers_gated_by_flag() {
        let text = r#"{"K":1,"media":[{"N":250,"gamma":15},{"N":0,"gamma":10}]}"#;
        assert!(SettingDoc::parse(text).unwrap().into_setting(false).is_err());
        let setting = SettingDoc::parse(text).unwrap().into_setting(true).unwrap();
        assert_eq!(setting.media()[1].subscribers(), 0);
    }

    #[test]
    fn round_trip_preserves_values() {
        let text = r#"{"K":2,"media":[{"N":4,"gamma":">"},{"N":2,"gamma":"0/1"}]}"#
            .replace('>', "7/2");
        let setting = SettingDoc::parse(&text).unwrap().into_setting(false).unwrap();
        let json = SettingDoc::from_setting(&setting).to_json();
        let reparsed = SettingDoc::parse(&json).unwrap().into_setting(false).unwrap();
        assert_eq!(setting, reparsed);
        // Integer-valued costs serialize as plain numbers.
        assert!(json.contains("\"gamma\":0"), "{json}");
        assert!(json.contains("\"gamma\":\"7/2\""), "{json}");
    }
}
