//! Minimal stderr logger driven by the `CIRCUMFEAS_LOG` environment
//! variable (`off`, `info` or `debug`; default `off`).

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum LogLevel {
    Off,
    Info,
    Debug,
}

#[derive(Clone, Copy, Debug)]
pub struct Logger {
    level: LogLevel,
}

impl Logger {
    pub fn from_env() -> Result<Self, CliError> {
        let level = match std::env::var("CIRCUMFEAS_LOG") {
            Err(_) => LogLevel::Off,
            Ok(v) => match v.as_str() {
                "off" | "" => LogLevel::Off,
                "info" => LogLevel::Info,
                "debug" => LogLevel::Debug,
                other => {
                    return Err(CliError::Config(format!(
                        "CIRCUMFEAS_LOG: expected off, info or debug, got '{other}'"
                    )))
                }
            },
        };
        Ok(Logger { level })
    }

    pub fn info(&self, msg: &str) {
        if self.level >= LogLevel::Info {
            eprintln!("[info] {msg}");
        }
    }

    pub fn debug(&self, msg: &str) {
        if self.level >= LogLevel::Debug {
            eprintln!("[debug] {msg}");
        }
    }
}
