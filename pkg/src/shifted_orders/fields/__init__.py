"""
Exact field implementations backing every matrix in the toolkit
"""
