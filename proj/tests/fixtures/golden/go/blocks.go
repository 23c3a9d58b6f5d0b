// Copyright 2024 Example Authors.
// Use of this source code is governed by a license.

//go:build linux

package blocks

func f() string {
	return "unterminated
}
// final note
