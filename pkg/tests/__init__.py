"""
Test package for shifted-orders
"""
