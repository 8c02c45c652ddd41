"""Exact conjugacy of finite linear actions on the projective plane."""
